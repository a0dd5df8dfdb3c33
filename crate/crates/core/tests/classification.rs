use leibniz_core::exactlin::{rat, ratio, Rational};
use leibniz_core::extensions::normalize_to_ln;
use leibniz_core::families::{
    companion_of_power, dieudonne_with_report, heisenberg, l_n, paper_presentation, PolynomialQ,
};
use leibniz_core::mapspaces::{basis_maps, derivation_space, is_automorphism, is_derivation, LinearMap};
use leibniz_core::Matrix;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| ratio(p, q))
}

/// Lower-unitriangular times upper triangular with nonzero diagonal.
fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    let entries = proptest::collection::vec(small_rational(), n * n);
    let lower = proptest::collection::vec(small_rational(), n * n);
    let diag = proptest::collection::vec(prop_oneof![Just(1i64), Just(-1), Just(2), Just(3)], n);
    (entries, lower, diag).prop_map(move |(u, l, d)| {
        let mut upper = Matrix::zeros(n, n);
        let mut low = Matrix::identity(n);
        for r in 0..n {
            for c in 0..n {
                if r < c {
                    upper[(r, c)] = u[r * n + c].clone();
                } else if r > c {
                    low[(r, c)] = l[r * n + c].clone();
                }
            }
            upper[(r, r)] = rat(d[r]);
        }
        &low * &upper
    })
}

fn presentation() -> impl Strategy<Value = (usize, Vec<Rational>, Vec<Rational>)> {
    (2usize..=5).prop_flat_map(|n| {
        (
            Just(n),
            proptest::collection::vec(small_rational(), n - 2),
            proptest::collection::vec(small_rational(), n - 2),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Any basis change of a presentation is still recognised and reduced to `L_n`.
    #[test]
    fn disguised_presentations_normalize(
        ((n, alpha, beta), q) in presentation()
            .prop_flat_map(|(n, a, b)| (Just((n, a, b)), invertible(n))),
    ) {
        let l = paper_presentation(n, &alpha, &beta).unwrap().transport(&q).unwrap();
        let norm = normalize_to_ln(&l).unwrap();
        let target = l_n(n).unwrap();
        prop_assert_eq!(norm.normalized.tensor(), target.tensor());
        let transported = l.transport(&norm.p).unwrap();
        prop_assert_eq!(transported.tensor(), target.tensor());
    }

    /// Automorphisms conjugate derivations into derivations.
    #[test]
    fn automorphisms_act_on_der((n, alpha, beta) in presentation()) {
        let l = paper_presentation(n, &alpha, &beta).unwrap();
        let p = normalize_to_ln(&l).unwrap().p;
        let ln = l_n(n).unwrap();
        // L_n is L written in the columns of P, so Der(L) = P Der(L_n) P⁻¹.
        let p_inv = p.inverse().unwrap();
        for d in basis_maps(&derivation_space(&ln), n) {
            let moved = LinearMap::new(&(&p * d.matrix()) * &p_inv).unwrap();
            prop_assert!(is_derivation(&l, &moved).unwrap());
        }
        prop_assert_eq!(derivation_space(&l).dim(), derivation_space(&ln).dim());
    }
}

#[test]
fn dieudonne_lists_no_pair_twice() {
    for n in 1..=8 {
        let (l, collisions) = dieudonne_with_report(n).unwrap();
        assert!(collisions.is_empty(), "n={n}: {collisions:?}");
        assert_eq!(l.dim(), 2 * n + 2);
        assert!(l.is_left_leibniz());
    }
}

#[test]
fn heisenberg_dimensions() {
    let f = PolynomialQ::monic(vec![rat(2), rat(0), rat(1)]).unwrap();
    for k in 1..=3 {
        let a = companion_of_power(&f, k).unwrap();
        let h = heisenberg(a.matrix()).unwrap();
        assert_eq!(h.dim(), 2 * a.size() + 1);
        assert_eq!(h.nilpotency_step(), Some(2));
        assert!(!h.is_lie());
    }
}

#[test]
fn identity_and_scaling_of_e1_are_automorphisms() {
    let l = l_n(3).unwrap();
    assert!(is_automorphism(&l, &Matrix::identity(3)).unwrap());
    let mut p = Matrix::identity(3);
    p[(0, 0)] = ratio(-7, 2);
    assert!(is_automorphism(&l, &p).unwrap());
}
