//! Constructions: conformal duals, dual representations, semidirect
//! products, matched-pair doubles, bilinear forms and Manin triples.
//!
//! Each construction comes as a formula (`*_unchecked`) and a checked entry
//! point that verifies its hypothesis first and returns
//! [`ConfError::Precondition`] with the failing report otherwise.

use super::*;
use crate::report::{ident, ident_dims, run_all, Ident};

/// Coproduct produced from each λ-product by conformal duality.
const DUAL_PAIRS: [(&str, &str); 2] = [("mul", "Delta"), ("bracket", "delta")];

/// The coalgebra on `P^{*c}` dual to `a`'s `mul` and `bracket`:
/// `Q*^{ij}_k(∂₁, ∂₂) = C^{ij}_k(∂₁, −∂₁−∂₂)`.
pub fn dual_conf_coalgebra(a: &ConfAlgebra) -> ConfCoalgebra {
    let n = a.rank;
    let subs = [
        (Var::LAMBDA, Poly::var(Var::D1)),
        (Var::PARTIAL, -&Poly::slot_sum(2)),
    ];
    let mut out = ConfCoalgebra::new(n);
    for (op, co) in DUAL_PAIRS {
        if let Some(t) = a.ops.get(op) {
            out.zero_coop(co);
            for ((i, j, k), p) in t.nonzero() {
                out.add(co, k, i, j, p.substitute_many(&subs));
            }
        }
    }
    out
}

/// The algebra on `P^{*c}` whose products are dual to the coproducts of
/// `c`: `C^{ij}_k(λ, ∂) = Q^{ij}_k(λ, −λ−∂)`.
pub fn dual_conf_algebra(c: &ConfCoalgebra) -> ConfAlgebra {
    let n = c.rank;
    let subs = [(Var::D1, Poly::l()), (Var::D2, -&(Poly::l() + Poly::d()))];
    let mut out = ConfAlgebra::new(n);
    for (op, co) in DUAL_PAIRS {
        if let Some(q) = c.coops.get(co) {
            out.zero_op(op);
            for (ix, p) in q.nonzero() {
                out.add(op, ix[1], ix[2], ix[0], p.substitute_many(&subs));
            }
        }
    }
    out
}

/// The contragredient table `S^{ik}_j(λ, ∂) = −R^{ij}_k(λ, −λ−∂)`, so that
/// `⟨φ*(a)_λ f, v⟩ = −⟨f, φ(a)_{…} v⟩` in conformal pairing conventions.
pub fn dual_action(r: &Table) -> Table {
    let mut s = Table::zeros(r.left, r.out, r.right);
    let shift = -&(Poly::l() + Poly::d());
    for ((i, j, k), p) in r.nonzero() {
        *s.get_mut(i, k, j) = -&p.substitute(Var::PARTIAL, &shift);
    }
    s
}

/// Dual representation on `V^{*c}` in the Poisson convention
/// `(ρ*, −l*)`, without checking the input.
pub fn dual_representation_unchecked(rep: &ConfRep) -> ConfRep {
    let mut out = ConfRep::new(rep.src, rep.dim);
    if let Some(rho) = rep.actions.get("rho") {
        out.actions.insert("rho".into(), dual_action(rho));
    }
    if let Some(lr) = rep.actions.get("l") {
        out.actions.insert("l".into(), -&dual_action(lr));
    }
    out
}

fn rep_kind_of(rep: &ConfRep) -> RepKind {
    match (
        rep.actions.contains_key("rho"),
        rep.actions.contains_key("l"),
    ) {
        (true, false) => RepKind::LieRep,
        (false, true) => RepKind::AssocRep,
        _ => RepKind::PoissonRep,
    }
}

/// [`dual_representation_unchecked`] after checking that `rep` is a
/// representation of `a` (Lie, associative or Poisson according to the
/// actions present).
pub fn dual_representation(a: &ConfAlgebra, rep: &ConfRep) -> Result<ConfRep, ConfError> {
    require(check_conf_representation(a, rep, rep_kind_of(rep))?)?;
    Ok(dual_representation_unchecked(rep))
}

// ---------------------------------------------------------------------------
// Semidirect products and matched pairs
// ---------------------------------------------------------------------------

/// Embed `rep`'s action `φ` as the mixed blocks of the table `t` on
/// `A ⊕ B` with `A` at offset `oa` and `B` at offset `ob`:
/// `a ·_λ x = φ(a)_λ x` and `x ·_λ a = sign · φ(a)_{−λ−∂} x`.
fn embed_action(t: &mut Table, phi: &Table, oa: usize, ob: usize, sign: i64) {
    let shift = -&(Poly::l() + Poly::d());
    let s = Poly::int(sign);
    for ((i, j, k), p) in phi.nonzero() {
        t.add_at(oa + i, ob + j, ob + k, &p);
        let q = &s * &p.substitute(Var::LAMBDA, &shift);
        t.add_at(ob + j, oa + i, ob + k, &q);
    }
}

fn embed_block(t: &mut Table, src: &Table, off: usize) {
    for ((i, j, k), p) in src.nonzero() {
        t.add_at(off + i, off + j, off + k, &p);
    }
}

/// The algebra on `P ⊕ Q` defined by the matched-pair formulas, with
/// `P`'s basis first. `rho_p, l_p` act by `P` on `Q` and `rho_q, l_q` by
/// `Q` on `P`. Only `mul` and `bracket` are built.
pub fn matched_pair_unchecked(
    p: &ConfAlgebra,
    q: &ConfAlgebra,
    rep_p: &ConfRep,
    rep_q: &ConfRep,
) -> Result<ConfAlgebra, ConfError> {
    let (n, m) = (p.rank, q.rank);
    if (rep_p.src, rep_p.dim) != (n, m) || (rep_q.src, rep_q.dim) != (m, n) {
        return Err(ConfError::Rank("matched-pair representations".into()));
    }
    let mut out = ConfAlgebra::new(n + m);
    for (op, act, sign) in [("mul", "l", 1), ("bracket", "rho", -1)] {
        let mut t = Table::square(n + m);
        embed_block(&mut t, p.op(op)?, 0);
        embed_block(&mut t, q.op(op)?, n);
        embed_action(&mut t, rep_p.action(act)?, 0, n, sign);
        embed_action(&mut t, rep_q.action(act)?, n, 0, sign);
        out.ops.insert(op.into(), t);
    }
    Ok(out)
}

/// Build the double of a candidate matched pair and check it is a Poisson
/// conformal algebra; the pair is matched exactly when the report passes.
pub fn matched_pair_double(
    p: &ConfAlgebra,
    q: &ConfAlgebra,
    rep_p: &ConfRep,
    rep_q: &ConfRep,
) -> Result<(ConfAlgebra, CheckReport), ConfError> {
    let d = matched_pair_unchecked(p, q, rep_p, rep_q)?;
    let mut rep = check_conf_structure(ConfKind::PoissonConf, &d)?;
    rep.title = "matched-pair".into();
    Ok((d, rep))
}

fn zero_algebra(rank: usize) -> ConfAlgebra {
    let mut z = ConfAlgebra::new(rank);
    z.zero_op("mul");
    z.zero_op("bracket");
    z
}

fn zero_rep(src: usize, dim: usize) -> ConfRep {
    let mut r = ConfRep::new(src, dim);
    for name in REP_ACTION_NAMES {
        r.actions.insert(name.into(), Table::zeros(src, dim, dim));
    }
    r
}

/// `A ⋉_{ρ,l} V` without checking that `(ρ, l)` is a representation.
pub fn semidirect_unchecked(a: &ConfAlgebra, rep: &ConfRep) -> Result<ConfAlgebra, ConfError> {
    matched_pair_unchecked(a, &zero_algebra(rep.dim), rep, &zero_rep(rep.dim, a.rank))
}

/// The semidirect product `A ⋉_{ρ,l} V` of a Poisson conformal algebra
/// and a representation of it, with `V`'s basis after `A`'s.
pub fn semidirect_product(a: &ConfAlgebra, rep: &ConfRep) -> Result<ConfAlgebra, ConfError> {
    require(check_conf_representation(a, rep, RepKind::PoissonRep)?)?;
    semidirect_unchecked(a, rep)
}

// ---------------------------------------------------------------------------
// Bilinear forms and Manin triples
// ---------------------------------------------------------------------------

/// The pairing `⟨a+f, b+g⟩_λ = f_λ(b) + g_{−λ}(a)` on `P ⊕ P^{*c}` with
/// `P` of rank `n` first.
pub fn standard_form(n: usize) -> ConfBilinearForm {
    let mut b = ConfBilinearForm::zeros(2 * n);
    for i in 0..n {
        *b.get_mut(i, n + i) = Poly::one();
        *b.get_mut(n + i, i) = Poly::one();
    }
    b
}

/// Determinant of a square matrix of polynomials by expansion over column
/// subsets (exact; practical up to rank ~20).
pub fn poly_determinant(rows: &[Vec<Poly>]) -> Poly {
    let n = rows.len();
    assert!(n < 24, "determinant rank too large");
    // minors[mask] = determinant of the first popcount(mask) rows restricted
    // to the columns in mask.
    let mut minors: Vec<Poly> = vec![Poly::zero(); 1 << n];
    minors[0] = Poly::one();
    for mask in 1usize..(1 << n) {
        let r = mask.count_ones() as usize - 1;
        let mut acc = Poly::zero();
        // expansion along the submatrix's last row `r`
        let mut sign_pos = r.is_multiple_of(2);
        for c in (0..n).filter(|c| mask & (1 << c) != 0) {
            let sub = &minors[mask & !(1 << c)];
            let e = &rows[r][c];
            if !e.is_zero() && !sub.is_zero() {
                let term = e * sub;
                if sign_pos {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            sign_pos = !sign_pos;
        }
        minors[mask] = acc;
    }
    minors[(1 << n) - 1].clone()
}

fn closure_ident<'a>(name: &str, d: &'a ConfAlgebra, part: &'a [usize]) -> Ident<'a> {
    let k = part.len();
    ident_dims(format!("closure({name})"), vec![k, k], move |t| {
        let (i, j) = (part[t[0]], part[t[1]]);
        let mut bad = Vec::new();
        for (opname, tab) in &d.ops {
            for o in 0..d.rank {
                let p = tab.get(i, j, o);
                if !part.contains(&o) && !p.is_zero() {
                    let pos = CONF_OP_NAMES.iter().position(|x| x == opname).unwrap_or(0);
                    bad.push((vec![pos, o], p.clone()));
                }
            }
        }
        bad
    })
}

fn isotropy_ident<'a>(name: &str, b: &'a ConfBilinearForm, part: &'a [usize]) -> Ident<'a> {
    let k = part.len();
    ident_dims(format!("isotropy({name})"), vec![k, k], move |t| {
        let p = b.get(part[t[0]], part[t[1]]);
        if p.is_zero() {
            vec![]
        } else {
            vec![(vec![0], p.clone())]
        }
    })
}

fn invariance_ident<'a>(
    op: &str,
    d: &'a ConfAlgebra,
    b: &'a ConfBilinearForm,
) -> Result<Ident<'a>, ConfError> {
    let tab = d.op(op)?;
    let n = d.rank;
    Ok(ident(format!("invariance({op})"), 3, move |t| {
        let (x, y, z) = (basis(n, t[0]), basis(n, t[1]), basis(n, t[2]));
        let lhs = b.pair(&lprod(tab, &x, &y, &Poly::l()), &z, &Poly::m());
        let shifted = Poly::m() - Poly::d();
        let rhs = b.pair(&x, &lprod(tab, &y, &z, &shifted), &Poly::l());
        let r = &lhs - &rhs;
        if r.is_zero() {
            vec![]
        } else {
            vec![(vec![0], r)]
        }
    }))
}

/// Check that `(D, D₁, D₂)` with `D₁ = split[0]` and `D₂ = split[1]` is a
/// Manin triple for the form `b`: `D` is a Poisson conformal algebra, both
/// parts are closed subalgebras, `b` is symmetric, nondegenerate and
/// invariant, and both parts are isotropic.
pub fn check_manin_triple(
    d: &ConfAlgebra,
    split: [&[usize]; 2],
    b: &ConfBilinearForm,
) -> Result<CheckReport, ConfError> {
    d.validate()?;
    let n = d.rank;
    if b.rank != n {
        return Err(ConfError::Rank("bilinear form".into()));
    }
    let mut seen = vec![0usize; n];
    for part in split {
        for &i in part {
            if i >= n {
                return Err(ConfError::Rank(format!("split index {}", i + 1)));
            }
            seen[i] += 1;
        }
    }
    let mut rep = CheckReport::new("manin-triple");
    if seen.iter().any(|&c| c != 1) {
        rep.note("split is not a partition of the basis");
        let bad = seen.iter().filter(|&&c| c != 1).count();
        rep.push(crate::report::IdentityResult {
            id: "partition".into(),
            instances: n,
            failures: bad,
            witnesses: vec![],
        });
    }
    let symmetric = ident("symmetry", 2, move |t| {
        let back = b.get(t[1], t[0]).substitute(Var::LAMBDA, &-&Poly::l());
        let r = b.get(t[0], t[1]) - &back;
        if r.is_zero() {
            vec![]
        } else {
            vec![(vec![0], r)]
        }
    });
    let rows: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| b.get(i, j).clone()).collect())
        .collect();
    let det = poly_determinant(&rows);
    let nondeg = ident_dims("nondegeneracy", vec![1], move |_| {
        if det.is_zero() {
            vec![(vec![0], Poly::zero())]
        } else {
            vec![]
        }
    });
    let mut ids = vec![
        closure_ident("P1", d, split[0]),
        closure_ident("P2", d, split[1]),
        symmetric,
        nondeg,
    ];
    for op in ["bracket", "mul"] {
        if d.ops.contains_key(op) {
            ids.push(invariance_ident(op, d, b)?);
        }
    }
    ids.push(isotropy_ident("P1", b, split[0]));
    ids.push(isotropy_ident("P2", b, split[1]));
    rep.merge(run_all("manin-triple", n, ids));
    let mut ambient = check_conf_structure(ConfKind::PoissonConf, d)?;
    for r in &mut ambient.identities {
        r.id = format!("ambient: {}", r.id);
    }
    rep.merge(ambient);
    Ok(rep)
}

// ---------------------------------------------------------------------------
// The double of a bialgebra
// ---------------------------------------------------------------------------

/// `r = Σ_i e_i ⊗ e_i*` on `P ⊕ P^{*c}` with `P` of rank `n`.
pub fn canonical_double_r(n: usize) -> Tensor {
    let mut r = Tensor::zeros(2 * n, 2);
    for i in 0..n {
        *r.get_mut(&[i, n + i]) = Poly::one();
    }
    r
}

/// The double `P ⊕ P^{*c}` of `(a, c)` as the matched pair of `P` and the
/// dual algebra, with the coadjoint representations `(𝔞𝔡*, −𝔏*)` both
/// ways, without checking the bialgebra hypothesis.
pub fn bialgebra_double_unchecked(
    a: &ConfAlgebra,
    c: &ConfCoalgebra,
) -> Result<(ConfAlgebra, Tensor), ConfError> {
    let dual = dual_conf_algebra(c);
    dual.op("mul")?;
    dual.op("bracket")?;
    let rep_p = dual_representation_unchecked(&ConfRep::adjoint(a));
    let rep_q = dual_representation_unchecked(&ConfRep::adjoint(&dual));
    let d = matched_pair_unchecked(a, &dual, &rep_p, &rep_q)?;
    Ok((d, canonical_double_r(a.rank)))
}

/// [`bialgebra_double_unchecked`] after checking that `(a, c)` is a
/// Poisson conformal bialgebra.
pub fn bialgebra_double(
    a: &ConfAlgebra,
    c: &ConfCoalgebra,
) -> Result<(ConfAlgebra, Tensor), ConfError> {
    let mut pre = check_conf_structure(ConfKind::PoissonConf, a)?;
    pre.merge(check_conf_bialgebra(ConfBiKind::PoissonConfBi, a, c)?);
    pre.title = "poisson-conformal-bialgebra".into();
    require(pre)?;
    bialgebra_double_unchecked(a, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s, &[]).unwrap()
    }

    #[test]
    fn dual_round_trip() {
        let mut a = ConfAlgebra::new(2);
        a.add("mul", 0, 1, 1, p("l^2 + 3*d"));
        a.add("bracket", 1, 1, 0, p("d + 2*l"));
        let back = dual_conf_algebra(&dual_conf_coalgebra(&a));
        assert_eq!(back, a);
    }

    #[test]
    fn constant_product_dualizes_to_diagonal() {
        let mut a = ConfAlgebra::new(1);
        a.add("mul", 0, 0, 0, Poly::one());
        let c = dual_conf_coalgebra(&a);
        assert_eq!(c.coop("Delta").unwrap().get(&[0, 0, 0]), &Poly::one());
    }

    #[test]
    fn determinant_of_small_matrices() {
        let rows = vec![vec![p("l"), p("1")], vec![p("2"), p("l")]];
        assert_eq!(poly_determinant(&rows), p("l^2 - 2"));
        let b = standard_form(2);
        let rows: Vec<Vec<Poly>> = (0..4)
            .map(|i| (0..4).map(|j| b.get(i, j).clone()).collect())
            .collect();
        assert_eq!(poly_determinant(&rows), p("1"));
    }

    #[test]
    fn zero_rep_semidirect_is_direct_sum() {
        let mut a = ConfAlgebra::new(1);
        a.add("bracket", 0, 0, 0, p("d + 2*l"));
        a.zero_op("mul");
        let s = semidirect_product(&a, &zero_rep(1, 2)).unwrap();
        assert_eq!(s.rank, 3);
        assert_eq!(s.op("bracket").unwrap().nonzero().len(), 1);
        assert!(s.op("mul").unwrap().is_zero());
    }
}
