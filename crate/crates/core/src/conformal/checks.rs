//! Axiom checkers for conformal algebras, coalgebras, bialgebras and
//! representations. Every identity is evaluated on basis tuples as an exact
//! polynomial in the free variables `λ, μ, ∂` (or slot variables).

use super::*;
use crate::report::{ident, ident_dims, run_all, Ident};

kind_enum!(ConfKind {
    CommAssocConf => "comm-assoc-conformal",
    LieConf => "lie-conformal",
    PoissonConf => "poisson-conformal",
    LeftSymConf => "left-symmetric-conformal",
    ZinbielConf => "zinbiel-conformal",
    PrePoissonConf => "pre-poisson-conformal",
});

kind_enum!(ConfCoKind {
    CoassocCocomm => "cocomm-coassoc-conformal",
    LieCoConf => "lie-co-conformal",
    PoissonCoConf => "poisson-co-conformal",
});

kind_enum!(ConfBiKind {
    ASIConf => "asi-conformal",
    ASIConfCommCocomm => "asi-comm-cocomm-conformal",
    LieConfBi => "lie-conformal-bi",
    PoissonConfBi => "poisson-conformal-bi",
});

kind_enum!(RepKind {
    LieRep => "lie-rep",
    AssocRep => "assoc-rep",
    PoissonRep => "poisson-rep",
});

fn l() -> Poly {
    Poly::l()
}

fn m() -> Poly {
    Poly::m()
}

/// `λ + μ`.
fn lm() -> Poly {
    Poly::l() + Poly::m()
}

/// `−λ − ∂`.
fn opp() -> Poly {
    -&(Poly::l() + Poly::d())
}

/// `−λ − ∂^{⊗2}` in slot variables.
fn opp2() -> Poly {
    -&(Poly::l() + Poly::slot_sum(2))
}

// ---------------------------------------------------------------------------
// Algebra identities
// ---------------------------------------------------------------------------

/// `x ·_λ y − y ·_{−λ−∂} x` (commutativity) or its skew version.
pub fn commutator_residual(t: &Table, x: &[Poly], y: &[Poly], skew: bool) -> LambdaElement {
    let a = lprod(t, x, y, &l());
    let b = lprod(t, y, x, &opp());
    if skew {
        vadd(&a, &b)
    } else {
        vsub(&a, &b)
    }
}

/// `(x ·_λ y) ·_{λ+μ} z − x ·_λ (y ·_μ z)`.
pub fn associator(t: &Table, x: &[Poly], y: &[Poly], z: &[Poly]) -> LambdaElement {
    let lhs = lprod(t, &lprod(t, x, y, &l()), z, &lm());
    let rhs = lprod(t, x, &lprod(t, y, z, &m()), &l());
    vsub(&lhs, &rhs)
}

fn comm_assoc<'a>(n: usize, mul: &'a Table) -> Vec<Ident<'a>> {
    vec![
        ident("commutativity(mul)", 2, move |t| {
            vnonzero(commutator_residual(
                mul,
                &basis(n, t[0]),
                &basis(n, t[1]),
                false,
            ))
        }),
        ident("associativity(mul)", 3, move |t| {
            let (a, b, c) = (basis(n, t[0]), basis(n, t[1]), basis(n, t[2]));
            vnonzero(associator(mul, &a, &b, &c))
        }),
    ]
}

fn lie<'a>(n: usize, br: &'a Table) -> Vec<Ident<'a>> {
    vec![
        ident("skew-symmetry(bracket)", 2, move |t| {
            vnonzero(commutator_residual(
                br,
                &basis(n, t[0]),
                &basis(n, t[1]),
                true,
            ))
        }),
        ident("Jacobi(bracket)", 3, move |t| {
            let (a, b, c) = (basis(n, t[0]), basis(n, t[1]), basis(n, t[2]));
            let lhs = lprod(br, &a, &lprod(br, &b, &c, &m()), &l());
            let r1 = lprod(br, &lprod(br, &a, &b, &l()), &c, &lm());
            let r2 = lprod(br, &b, &lprod(br, &a, &c, &l()), &m());
            vnonzero(vsub(&lhs, &vadd(&r1, &r2)))
        }),
    ]
}

fn leibniz<'a>(n: usize, mul: &'a Table, br: &'a Table) -> Vec<Ident<'a>> {
    vec![ident("Leibniz", 3, move |t| {
        let (a, b, c) = (basis(n, t[0]), basis(n, t[1]), basis(n, t[2]));
        let lhs = lprod(br, &a, &lprod(mul, &b, &c, &m()), &l());
        let r1 = lprod(mul, &lprod(br, &a, &b, &l()), &c, &lm());
        let r2 = lprod(mul, &b, &lprod(br, &a, &c, &l()), &m());
        vnonzero(vsub(&lhs, &vadd(&r1, &r2)))
    })]
}

fn left_symmetric<'a>(n: usize, circ: &'a Table) -> Vec<Ident<'a>> {
    vec![ident("left-symmetry(circ)", 3, move |t| {
        let (a, b, c) = (basis(n, t[0]), basis(n, t[1]), basis(n, t[2]));
        let abc = associator(circ, &a, &b, &c);
        // (b∘_μ a)∘_{λ+μ} c − b∘_μ(a∘_λ c)
        let lhs = lprod(circ, &lprod(circ, &b, &a, &m()), &c, &lm());
        let rhs = lprod(circ, &b, &lprod(circ, &a, &c, &l()), &m());
        vnonzero(vsub(&abc, &vsub(&lhs, &rhs)))
    })]
}

fn zinbiel<'a>(n: usize, succ: &'a Table) -> Vec<Ident<'a>> {
    vec![ident("Zinbiel(succ)", 3, move |t| {
        let (a, b, c) = (basis(n, t[0]), basis(n, t[1]), basis(n, t[2]));
        let lhs = lprod(succ, &a, &lprod(succ, &b, &c, &m()), &l());
        let sym = vadd(&lprod(succ, &a, &b, &l()), &lprod(succ, &b, &a, &opp()));
        let rhs = lprod(succ, &sym, &c, &lm());
        vnonzero(vsub(&lhs, &rhs))
    })]
}

fn pre_poisson_compat<'a>(n: usize, circ: &'a Table, succ: &'a Table) -> Vec<Ident<'a>> {
    vec![
        ident("pre-P1", 3, move |t| {
            let (a, b, c) = (basis(n, t[0]), basis(n, t[1]), basis(n, t[2]));
            let skew = vsub(&lprod(circ, &a, &b, &l()), &lprod(circ, &b, &a, &opp()));
            let lhs = lprod(succ, &skew, &c, &lm());
            let r1 = lprod(circ, &a, &lprod(succ, &b, &c, &m()), &l());
            let r2 = lprod(succ, &b, &lprod(circ, &a, &c, &l()), &m());
            vnonzero(vsub(&lhs, &vsub(&r1, &r2)))
        }),
        ident("pre-P2", 3, move |t| {
            let (a, b, c) = (basis(n, t[0]), basis(n, t[1]), basis(n, t[2]));
            let sym = vadd(&lprod(succ, &a, &b, &l()), &lprod(succ, &b, &a, &opp()));
            let lhs = lprod(circ, &sym, &c, &lm());
            let r1 = lprod(succ, &a, &lprod(circ, &b, &c, &m()), &l());
            let r2 = lprod(succ, &b, &lprod(circ, &a, &c, &l()), &m());
            vnonzero(vsub(&lhs, &vadd(&r1, &r2)))
        }),
    ]
}

fn structure_idents<'a>(kind: ConfKind, a: &'a ConfAlgebra) -> Result<Vec<Ident<'a>>, ConfError> {
    use ConfKind::*;
    let n = a.rank;
    Ok(match kind {
        CommAssocConf => comm_assoc(n, a.op("mul")?),
        LieConf => lie(n, a.op("bracket")?),
        PoissonConf => {
            let (mul, br) = (a.op("mul")?, a.op("bracket")?);
            let mut v = comm_assoc(n, mul);
            v.extend(lie(n, br));
            v.extend(leibniz(n, mul, br));
            v
        }
        LeftSymConf => left_symmetric(n, a.op("circ")?),
        ZinbielConf => zinbiel(n, a.op("succ")?),
        PrePoissonConf => {
            let (circ, succ) = (a.op("circ")?, a.op("succ")?);
            let mut v = left_symmetric(n, circ);
            v.extend(zinbiel(n, succ));
            v.extend(pre_poisson_compat(n, circ, succ));
            v
        }
    })
}

/// Evaluate every identity of `kind` on all basis tuples.
pub fn check_conf_structure(kind: ConfKind, a: &ConfAlgebra) -> Result<CheckReport, ConfError> {
    a.validate()?;
    let ids = structure_idents(kind, a)?;
    Ok(run_all(kind.as_str(), a.rank, ids))
}

// ---------------------------------------------------------------------------
// Coalgebra identities
// ---------------------------------------------------------------------------

fn cocomm_coassoc<'a>(dd: &'a Tensor) -> Vec<Ident<'a>> {
    vec![
        ident("coassociativity(Delta)", 1, move |t| {
            let x = co_basis(dd, t[0]);
            tnonzero(&co_slot(&x, 1, dd) - &co_slot(&x, 0, dd))
        }),
        ident("cocommutativity(Delta)", 1, move |t| {
            let x = co_basis(dd, t[0]);
            tnonzero(&x - &tau(&x))
        }),
    ]
}

fn lie_co<'a>(dl: &'a Tensor) -> Vec<Ident<'a>> {
    vec![
        ident("coskew-symmetry(delta)", 1, move |t| {
            let x = co_basis(dl, t[0]);
            tnonzero(&x + &tau(&x))
        }),
        ident("coJacobi(delta)", 1, move |t| {
            let x = co_basis(dl, t[0]);
            let i_d = co_slot(&x, 1, dl);
            tnonzero(&(&i_d - &tau12(&i_d)) - &co_slot(&x, 0, dl))
        }),
    ]
}

fn poisson_co<'a>(dd: &'a Tensor, dl: &'a Tensor) -> Vec<Ident<'a>> {
    vec![ident("coalgebra-1", 1, move |t| {
        let y = co_basis(dl, t[0]);
        let x = co_basis(dd, t[0]);
        let lhs = co_slot(&y, 1, dd);
        let rhs = &co_slot(&x, 0, dl) + &tau12(&co_slot(&x, 1, dl));
        tnonzero(&lhs - &rhs)
    })]
}

fn coalgebra_idents<'a>(
    kind: ConfCoKind,
    c: &'a ConfCoalgebra,
) -> Result<Vec<Ident<'a>>, ConfError> {
    use ConfCoKind::*;
    Ok(match kind {
        CoassocCocomm => cocomm_coassoc(c.coop("Delta")?),
        LieCoConf => lie_co(c.coop("delta")?),
        PoissonCoConf => {
            let (dd, dl) = (c.coop("Delta")?, c.coop("delta")?);
            let mut v = cocomm_coassoc(dd);
            v.extend(lie_co(dl));
            v.extend(poisson_co(dd, dl));
            v
        }
    })
}

/// Evaluate every coalgebra identity of `kind` on all basis elements.
pub fn check_conf_coalgebra(kind: ConfCoKind, c: &ConfCoalgebra) -> Result<CheckReport, ConfError> {
    c.validate()?;
    let ids = coalgebra_idents(kind, c)?;
    Ok(run_all(kind.as_str(), c.rank, ids))
}

// ---------------------------------------------------------------------------
// Bialgebra compatibilities
// ---------------------------------------------------------------------------

/// `(φ(x)_Λ ⊗ I + I ⊗ φ(x)_Λ) t` on an order-2 tensor.
fn both(tab: &Table, x: &[Poly], lam: &Poly, t: &Tensor) -> Tensor {
    &left_slot(tab, x, lam, t, 0) + &left_slot(tab, x, lam, t, 1)
}

/// Residual of `Δ(a ·_λ b) = (I ⊗ 𝔏(a)_λ)Δ(b) + (ℜ(b)_{−λ−∂^{⊗2}} ⊗ I)Δ(a)` on
/// basis vectors, bilinear in `(mul, dd)`.
pub(crate) fn asi1_residual(mul: &Table, dd: &Tensor, i: usize, j: usize) -> Tensor {
    let n = mul.left;
    let (a, b) = (basis(n, i), basis(n, j));
    let lhs = co_vec(dd, &lprod(mul, &a, &b, &l()));
    let r1 = left_slot(mul, &a, &l(), &co_basis(dd, j), 1);
    let r2 = right_slot(mul, &b, &opp2(), &co_basis(dd, i), 0);
    &lhs - &(&r1 + &r2)
}

/// Residual of the second ASI compatibility on basis vectors, bilinear in
/// `(mul, dd)`.
pub(crate) fn asi2_residual(mul: &Table, dd: &Tensor, i: usize, j: usize) -> Tensor {
    let n = mul.left;
    let (a, b) = (basis(n, i), basis(n, j));
    let da = co_basis(dd, i);
    let db = co_basis(dd, j);
    let first = &left_slot(mul, &b, &opp2(), &da, 0) - &right_slot(mul, &b, &opp2(), &da, 1);
    let inner = &left_slot(mul, &a, &l(), &db, 0) - &right_slot(mul, &a, &l(), &db, 1);
    &first + &tau(&inner)
}

fn asi_general<'a>(_n: usize, mul: &'a Table, dd: &'a Tensor) -> Vec<Ident<'a>> {
    vec![
        ident("1-thq", 2, move |t| {
            tnonzero(asi1_residual(mul, dd, t[0], t[1]))
        }),
        ident("2-thq", 2, move |t| {
            tnonzero(asi2_residual(mul, dd, t[0], t[1]))
        }),
    ]
}

fn asi_comm<'a>(n: usize, mul: &'a Table, dd: &'a Tensor) -> Vec<Ident<'a>> {
    vec![ident("thq1", 2, move |t| {
        let (a, b) = (basis(n, t[0]), basis(n, t[1]));
        let lhs = co_vec(dd, &lprod(mul, &a, &b, &l()));
        let r1 = left_slot(mul, &a, &l(), &co_basis(dd, t[1]), 1);
        let r2 = left_slot(mul, &b, &opp2(), &co_basis(dd, t[0]), 0);
        tnonzero(&lhs - &(&r1 + &r2))
    })]
}

fn lie_bi<'a>(n: usize, br: &'a Table, dl: &'a Tensor) -> Vec<Ident<'a>> {
    vec![ident("Lie-bialgebra", 2, move |t| {
        let (a, b) = (basis(n, t[0]), basis(n, t[1]));
        let lhs = co_vec(dl, &lprod(br, &a, &b, &l()));
        let r1 = both(br, &a, &l(), &co_basis(dl, t[1]));
        let r2 = both(br, &b, &opp2(), &co_basis(dl, t[0]));
        tnonzero(&lhs - &(&r1 - &r2))
    })]
}

fn poisson_bi<'a>(
    n: usize,
    mul: &'a Table,
    br: &'a Table,
    dd: &'a Tensor,
    dl: &'a Tensor,
) -> Vec<Ident<'a>> {
    vec![
        ident("PB1", 2, move |t| {
            let (a, b) = (basis(n, t[0]), basis(n, t[1]));
            let lhs = co_vec(dl, &lprod(mul, &a, &b, &l()));
            let mut rhs = left_slot(mul, &a, &l(), &co_basis(dl, t[1]), 0);
            rhs = &rhs + &left_slot(mul, &b, &opp2(), &co_basis(dl, t[0]), 0);
            rhs = &rhs + &left_slot(br, &a, &l(), &co_basis(dd, t[1]), 1);
            rhs = &rhs + &left_slot(br, &b, &opp2(), &co_basis(dd, t[0]), 1);
            tnonzero(&lhs - &rhs)
        }),
        ident("PB2", 2, move |t| {
            let (a, b) = (basis(n, t[0]), basis(n, t[1]));
            let lhs = co_vec(dd, &lprod(br, &a, &b, &l()));
            let da = co_basis(dl, t[0]);
            let mut rhs = both(br, &a, &l(), &co_basis(dd, t[1]));
            rhs = &rhs - &left_slot(mul, &b, &opp2(), &da, 1);
            rhs = &rhs + &left_slot(mul, &b, &opp2(), &da, 0);
            tnonzero(&lhs - &rhs)
        }),
    ]
}

fn bialgebra_idents<'a>(
    kind: ConfBiKind,
    a: &'a ConfAlgebra,
    c: &'a ConfCoalgebra,
) -> Result<Vec<Ident<'a>>, ConfError> {
    use ConfBiKind::*;
    let n = a.rank;
    Ok(match kind {
        ASIConf => asi_general(n, a.op("mul")?, c.coop("Delta")?),
        ASIConfCommCocomm => asi_comm(n, a.op("mul")?, c.coop("Delta")?),
        LieConfBi => lie_bi(n, a.op("bracket")?, c.coop("delta")?),
        PoissonConfBi => {
            let (mul, br) = (a.op("mul")?, a.op("bracket")?);
            let (dd, dl) = (c.coop("Delta")?, c.coop("delta")?);
            let mut v = coalgebra_idents(ConfCoKind::PoissonCoConf, c)?;
            v.extend(asi_comm(n, mul, dd));
            v.extend(lie_bi(n, br, dl));
            v.extend(poisson_bi(n, mul, br, dd, dl));
            v
        }
    })
}

/// Evaluate the compatibility identities of `kind` on all basis pairs. For
/// `PoissonConfBi` this includes the Poisson coalgebra identities; the
/// algebra axioms are a separate call to [`check_conf_structure`].
pub fn check_conf_bialgebra(
    kind: ConfBiKind,
    a: &ConfAlgebra,
    c: &ConfCoalgebra,
) -> Result<CheckReport, ConfError> {
    a.validate()?;
    c.validate()?;
    if a.rank != c.rank {
        return Err(ConfError::Rank("algebra and coalgebra".into()));
    }
    let ids = bialgebra_idents(kind, a, c)?;
    Ok(run_all(kind.as_str(), a.rank, ids))
}

// ---------------------------------------------------------------------------
// Representations
// ---------------------------------------------------------------------------

fn assoc_rep<'a>(n: usize, dim: usize, mul: &'a Table, lr: &'a Table) -> Vec<Ident<'a>> {
    vec![ident_dims("assoc-rep(l)", vec![n, n, dim], move |t| {
        let (a, b, v) = (basis(n, t[0]), basis(n, t[1]), basis(dim, t[2]));
        let lhs = lprod(lr, &lprod(mul, &a, &b, &l()), &v, &lm());
        let rhs = lprod(lr, &a, &lprod(lr, &b, &v, &m()), &l());
        vnonzero(vsub(&lhs, &rhs))
    })]
}

fn lie_rep<'a>(n: usize, dim: usize, br: &'a Table, rho: &'a Table) -> Vec<Ident<'a>> {
    vec![ident_dims("lie-rep(rho)", vec![n, n, dim], move |t| {
        let (a, b, v) = (basis(n, t[0]), basis(n, t[1]), basis(dim, t[2]));
        let lhs = lprod(rho, &lprod(br, &a, &b, &l()), &v, &lm());
        let r1 = lprod(rho, &a, &lprod(rho, &b, &v, &m()), &l());
        let r2 = lprod(rho, &b, &lprod(rho, &a, &v, &l()), &m());
        vnonzero(vsub(&lhs, &vsub(&r1, &r2)))
    })]
}

fn poisson_rep<'a>(
    n: usize,
    dim: usize,
    mul: &'a Table,
    br: &'a Table,
    rho: &'a Table,
    lr: &'a Table,
) -> Vec<Ident<'a>> {
    vec![
        ident_dims("eq-PM1", vec![n, n, dim], move |t| {
            let (a, b, v) = (basis(n, t[0]), basis(n, t[1]), basis(dim, t[2]));
            let lhs = lprod(rho, &lprod(mul, &a, &b, &m()), &v, &opp());
            let inner_a = lprod(rho, &a, &v, &opp());
            let shift = -&(Poly::l() + Poly::m() + Poly::d());
            let r1 = lprod(lr, &b, &inner_a, &shift);
            let r2 = lprod(lr, &a, &lprod(rho, &b, &v, &opp()), &m());
            vnonzero(vsub(&lhs, &vadd(&r1, &r2)))
        }),
        ident_dims("eq-PM2", vec![n, n, dim], move |t| {
            let (a, b, v) = (basis(n, t[0]), basis(n, t[1]), basis(dim, t[2]));
            let lhs = lprod(rho, &a, &lprod(lr, &b, &v, &m()), &l());
            let r1 = lprod(lr, &lprod(br, &a, &b, &l()), &v, &lm());
            let r2 = lprod(lr, &b, &lprod(rho, &a, &v, &l()), &m());
            vnonzero(vsub(&lhs, &vadd(&r1, &r2)))
        }),
    ]
}

/// Evaluate the representation identities of `kind` on all triples
/// `(e_a, e_b, v_j)`.
pub fn check_conf_representation(
    a: &ConfAlgebra,
    rep: &ConfRep,
    kind: RepKind,
) -> Result<CheckReport, ConfError> {
    a.validate()?;
    rep.validate()?;
    if rep.src != a.rank {
        return Err(ConfError::Rank("representation source".into()));
    }
    let (n, dim) = (a.rank, rep.dim);
    let ids = match kind {
        RepKind::AssocRep => assoc_rep(n, dim, a.op("mul")?, rep.action("l")?),
        RepKind::LieRep => lie_rep(n, dim, a.op("bracket")?, rep.action("rho")?),
        RepKind::PoissonRep => {
            let (mul, br) = (a.op("mul")?, a.op("bracket")?);
            let (rho, lr) = (rep.action("rho")?, rep.action("l")?);
            let mut v = lie_rep(n, dim, br, rho);
            v.extend(assoc_rep(n, dim, mul, lr));
            v.extend(poisson_rep(n, dim, mul, br, rho, lr));
            v
        }
    };
    Ok(run_all(kind.as_str(), n, ids))
}
