//! Property tests of the algebraic invariants the checks rely on.

mod common;

use confalg::conformal::{
    co_basis, dual_conf_algebra, dual_conf_coalgebra, lprod, tau, ConfAlgebra, ConfKind, Table,
};
use confalg::deform::{semiclassical_limit_unchecked, zero_deformation, TruncatedDeformation};
use confalg::exactpoly::{Poly, Var};
use confalg::tensor::Tensor;
use confalg::ybe::{bullet_square, check_pcybe, coboundary_coproducts, double_bracket};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Poly> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| Poly::rat(n, d))
}

/// A polynomial with up to four terms in two variables, degrees below 3.
fn poly_in(x: Var, y: Var) -> impl Strategy<Value = Poly> {
    prop::collection::vec((rational(), 0u32..3, 0u32..3), 0..4).prop_map(move |terms| {
        terms.into_iter().fold(Poly::zero(), |acc, (c, a, b)| {
            &acc + &(&(&c * &Poly::var(x).pow(a)) * &Poly::var(y).pow(b))
        })
    })
}

fn table(n: usize) -> impl Strategy<Value = Table> {
    prop::collection::vec(poly_in(Var::PARTIAL, Var::LAMBDA), n * n * n).prop_map(move |ps| {
        let mut t = Table::square(n);
        for (o, p) in ps.into_iter().enumerate() {
            t.add_at(o / (n * n), (o / n) % n, o % n, &p);
        }
        t
    })
}

fn tensor(n: usize, order: usize, x: Var, y: Var) -> impl Strategy<Value = Tensor> {
    prop::collection::vec(poly_in(x, y), n.pow(order as u32))
        .prop_map(move |ps| Tensor::from_vec(n, order, ps))
}

fn element(n: usize) -> impl Strategy<Value = Vec<Poly>> {
    prop::collection::vec(poly_in(Var::PARTIAL, Var::PARTIAL), n)
}

fn algebra(n: usize) -> impl Strategy<Value = ConfAlgebra> {
    (table(n), table(n)).prop_map(move |(m, b)| {
        let mut a = ConfAlgebra::new(n);
        a.ops.insert("mul".into(), m);
        a.ops.insert("bracket".into(), b);
        a
    })
}

fn times(p: &Poly, x: &[Poly]) -> Vec<Poly> {
    x.iter().map(|c| p * c).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(p in poly_in(Var::D1, Var::D2), q in poly_in(Var::D1, Var::D2),
                 r in poly_in(Var::D1, Var::PARTIAL)) {
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn substitution_is_multiplicative(p in poly_in(Var::PARTIAL, Var::LAMBDA),
                                      q in poly_in(Var::PARTIAL, Var::LAMBDA),
                                      s in poly_in(Var::D1, Var::D2)) {
        let lhs = (&p * &q).substitute(Var::LAMBDA, &s);
        let rhs = &p.substitute(Var::LAMBDA, &s) * &q.substitute(Var::LAMBDA, &s);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn serialization_round_trips(p in poly_in(Var::D1, Var::LAMBDA)) {
        let s = p.serialize();
        prop_assert_eq!(Poly::parse(&s, &[]).unwrap(), p);
    }

    #[test]
    fn lambda_product_is_sesquilinear(t in table(2), x in element(2), y in element(2)) {
        let (d, l) = (Poly::d(), Poly::l());
        let base = lprod(&t, &x, &y, &l);
        prop_assert_eq!(lprod(&t, &times(&d, &x), &y, &l), times(&-&l, &base));
        prop_assert_eq!(lprod(&t, &x, &times(&d, &y), &l), times(&(&l + &d), &base));
    }

    #[test]
    fn tau_is_an_involution(q in tensor(3, 2, Var::D1, Var::D2)) {
        prop_assert_eq!(tau(&tau(&q)), q);
    }

    #[test]
    fn conformal_duality_round_trips(a in algebra(2)) {
        prop_assert_eq!(dual_conf_algebra(&dual_conf_coalgebra(&a)), a);
    }

    #[test]
    fn semiclassical_bracket_is_skew(t in table(2)) {
        let mut base = ConfAlgebra::new(2);
        base.zero_op("mul");
        let mut d = TruncatedDeformation::trivial(base, 3);
        d.corrections[0] = t;
        let (_, c) = zero_deformation(2, 3);
        let (alg, _, _) = semiclassical_limit_unchecked(&d, &c).unwrap();
        let rep = confalg::conformal::check_conf_structure(ConfKind::LieConf, &alg).unwrap();
        prop_assert!(rep.get("skew-symmetry(bracket)").unwrap().passed());
    }

    #[test]
    fn yang_baxter_terms_are_quadratic(a in algebra(2), r in tensor(2, 2, Var::D1, Var::D2),
                                       c in rational()) {
        prop_assume!(!c.is_zero());
        let c2 = &c * &c;
        let cr = r.scale(&c);
        prop_assert_eq!(double_bracket(&a, &cr).unwrap(), double_bracket(&a, &r).unwrap().scale(&c2));
        prop_assert_eq!(bullet_square(&a, &cr).unwrap(), bullet_square(&a, &r).unwrap().scale(&c2));
        prop_assert_eq!(check_pcybe(&a, &cr).unwrap().passed(), check_pcybe(&a, &r).unwrap().passed());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn skew_r_gives_antisymmetric_delta(ps in prop::collection::vec(poly_in(Var::D1, Var::D2), 3)) {
        let b = common::published();
        let mut r = Tensor::zeros(6, 2);
        for (p, (i, j)) in ps.iter().zip([(0, 3), (1, 4), (2, 5)]) {
            r.add_at(&[i, j], p);
            r.add_at(&[j, i], &-&p.rename(&[(Var::D1, Var::D2), (Var::D2, Var::D1)]));
        }
        let dl = coboundary_coproducts(&b.hat, &r).unwrap();
        let dl = dl.coop("delta").unwrap();
        for k in 0..6 {
            let x = co_basis(dl, k);
            prop_assert!((&x + &tau(&x)).is_zero(), "δ(e_{}) is not antisymmetric", k + 1);
        }
    }
}
