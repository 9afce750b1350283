//! Conversions between finite-dimensional and conformal structures, the
//! polynomial example and the deformation examples.

mod common;

use common::{corrected, p, published};
use confalg::bridges::*;
use confalg::conformal::{
    check_conf_coalgebra, check_conf_structure, ConfAlgebra, ConfCoKind, ConfKind, Table,
};
use confalg::deform::*;
use confalg::exactpoly::Poly;
use confalg::examples::{polyx, polyx_displays, q_symbol};
use confalg::findim::{check_fin_structure, FinStructure, StructureKind};

#[test]
fn novikov_product_gives_the_conformal_bracket() {
    // e1 ∘ e1 = e1, e2 ∘ e1 = e2 (a Novikov algebra) with zero dot.
    let mut a = FinStructure::new(2);
    a.add_op("circ", 0, 0, 0, Poly::one());
    a.add_op("circ", 1, 0, 1, Poly::one());
    a.zero_op("dot");
    let c = pgd_to_conformal(&a).unwrap();
    let br = c.op("bracket").unwrap();
    // [a_λ b] = ∂(b∘a) + λ(b⋆a)
    assert_eq!(br.get(0, 0, 0), &p("d + 2*l"));
    assert_eq!(br.get(0, 1, 1), &p("d + l"));
    assert_eq!(br.get(1, 0, 1), &p("l"));
    assert!(check_conf_structure(ConfKind::PoissonConf, &c)
        .unwrap()
        .passed());
}

#[test]
fn checked_conversions_follow_the_hypotheses() {
    let b = published();
    // The published pre-PGD data is not pre-PGD, its associated PGD is.
    assert!(pre_pgd_to_pre_poisson_conformal(&b.pre_pgd).is_err());
    assert_eq!(pgd_to_conformal(&b.pgd).unwrap(), b.poisson);
    let c = corrected();
    assert_eq!(
        pre_pgd_to_pre_poisson_conformal(&c.pre_pgd).unwrap(),
        c.pre_conf
    );
    assert_eq!(pgd_to_conformal(&c.pgd).unwrap(), c.poisson);
}

#[test]
fn both_routes_agree_on_a_rank_one_structure() {
    let mut a = FinStructure::new(1);
    a.add_op("circ", 0, 0, 0, Poly::one());
    a.add_op("dot", 0, 0, 0, Poly::one());
    let fin = check_fin_structure(StructureKind::PGD, &pgd_completion(&a)).unwrap();
    let conv = pgd_to_conformal(&a);
    assert_eq!(fin.passed(), conv.is_ok());
    let conf = pgd_to_conformal_unchecked(&a).unwrap();
    let rep = check_conf_structure(ConfKind::PoissonConf, &conf).unwrap();
    assert_eq!(fin.passed(), rep.passed());
}

#[test]
fn polyx_at_q_zero() {
    let a = polyx(&Poly::zero(), 8);
    let (c, co) = pgd_bialgebra_to_conf_bialgebra(&a).unwrap();
    let br = c.op("bracket").unwrap();
    // [x²_λ x³] = (2∂ + 5λ) x⁴ and x²_λ x³ = x⁵
    assert_eq!(br.get(2, 3, 4), &p("2*d + 5*l"));
    assert_eq!(c.op("mul").unwrap().get(2, 3, 5), &Poly::one());
    // δ(x³) = −(∂x ⊗ 1 − 1 ⊗ ∂x) − 2(∂1 ⊗ x − x ⊗ ∂1)
    let dl = co.coop("delta").unwrap();
    assert_eq!(dl.get(&[3, 1, 0]), &p("-d1 + 2*d2"));
    assert_eq!(dl.get(&[3, 0, 1]), &p("-2*d1 + d2"));
    // Δ(x³) = x² ⊗ 1 + x ⊗ x + 1 ⊗ x²
    let dd = co.coop("Delta").unwrap();
    for (i, j) in [(2, 0), (1, 1), (0, 2)] {
        assert_eq!(dd.get(&[3, i, j]), &Poly::one());
    }
    assert!(polyx_displays(&c, &co, &Poly::zero(), 8).passed());
}

#[test]
fn polyx_with_symbolic_q_carries_the_factor() {
    let q = q_symbol();
    let a = polyx(&q, 4);
    let rep = check_pgd_bialgebra(&a).unwrap();
    assert!(rep.passed(), "{rep}");
    let (c, co) = pgd_bialgebra_to_conf_bialgebra_unchecked(&a).unwrap();
    assert_eq!(
        c.op("bracket").unwrap().get(2, 3, 4),
        &p("(1 - q)*(2*d + 5*l)")
    );
    assert!(polyx_displays(&c, &co, &q, 4).passed());
}

#[test]
fn pgd_coalgebra_of_the_zero_structure() {
    let mut a = FinStructure::new(2);
    a.zero_op("circ");
    a.zero_op("dot");
    let co = pgd_coalgebra_to_conformal(&a);
    assert!(co.coops.values().all(|t| t.is_zero()));
    assert!(check_conf_coalgebra(ConfCoKind::PoissonCoConf, &co)
        .unwrap()
        .passed());
}

#[test]
fn virasoro_deformation_fails_at_second_order() {
    let (d, c) = virasoro_deformation(3);
    let rep = check_truncated_deformation(&d).unwrap();
    assert_eq!(rep.failed_ids(), ["associativity(h^2)"]);
    let w = &rep.get("associativity(h^2)").unwrap().witnesses[0];
    assert_eq!(w.residual[0].1, p("d^2 + 2*d*l + 3*d*m + 4*l*m + 2*m^2"));
    assert!(check_truncated_codeformation(&c).unwrap().passed());
    assert!(check_truncated_asi(&d, &c).unwrap().passed());
    match semiclassical_limit(&d, &c) {
        Err(DeformError::Precondition { order, .. }) => assert_eq!(order, Some(2)),
        other => panic!("expected a precondition failure, got {other:?}"),
    }
}

#[test]
fn virasoro_limit_bracket() {
    let (d, c) = virasoro_deformation(3);
    let (alg, co, _) = semiclassical_limit_unchecked(&d, &c).unwrap();
    assert_eq!(alg.op("bracket").unwrap().get(0, 0, 0), &p("2*d + 4*l"));
    assert!(check_conf_structure(ConfKind::PoissonConf, &alg)
        .unwrap()
        .passed());
    assert!(co.coop("delta").unwrap().is_zero());
}

#[test]
fn zero_deformation_limit_is_a_bialgebra() {
    let (d, c) = zero_deformation(2, 3);
    let (alg, _, rep) = semiclassical_limit(&d, &c).unwrap();
    assert!(rep.passed(), "{rep}");
    assert!(alg.ops.values().all(Table::is_zero));
}

#[test]
fn truncation_order_is_enforced() {
    let (d, c) = zero_deformation(1, 2);
    assert!(matches!(
        semiclassical_limit(&d, &c),
        Err(DeformError::Order { min: 3, got: 2 })
    ));
    let (d1, c1) = zero_deformation(1, 1);
    assert!(semiclassical_limit_unchecked(&d1, &c1).is_err());
}

#[test]
fn perturbed_base_breaks_the_hypotheses() {
    let (mut d, c) = current_deformation(3);
    d.base.add("mul", 0, 1, 0, Poly::one());
    let rep = check_deformation_hypotheses(&d, &c).unwrap();
    assert!(rep.failed_ids().contains(&"commutativity(mul)"), "{rep}");
}

#[test]
fn commutator_of_any_first_order_term_is_skew() {
    let mut t = Table::square(2);
    t.add_at(0, 1, 0, &p("d^2 + l"));
    t.add_at(1, 1, 1, &p("3*d*l"));
    let mut base = ConfAlgebra::new(2);
    base.zero_op("mul");
    let mut d = TruncatedDeformation::trivial(base, 3);
    d.corrections[0] = t;
    let (_, c) = zero_deformation(2, 3);
    let (alg, _, _) = semiclassical_limit_unchecked(&d, &c).unwrap();
    let rep = check_conf_structure(ConfKind::LieConf, &alg).unwrap();
    assert!(rep.get("skew-symmetry(bracket)").unwrap().passed());
}
