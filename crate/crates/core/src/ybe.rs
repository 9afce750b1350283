//! Coboundary Poisson conformal bialgebras: the tensors `[[r, r]]` and
//! `r • r`, the Yang-Baxter test modulo `∂^{⊗3}`, the five coboundary
//! conditions, O-operators and pre-Poisson conformal algebras.
//!
//! An r-matrix `r = Σ R_{ac}(∂₁, ∂₂) e_a ⊗ e_c` is an order-2 [`Tensor`]
//! whose coefficients use the slot variables `d1, d2`.

use crate::conformal::{
    check_conf_representation, check_conf_structure, dual_representation_unchecked, left_slot,
    lprod, neg_slot_sum, require, semidirect_unchecked, slot_var, tau, vadd, vnonzero, vsub,
    ConfAlgebra, ConfCoalgebra, ConfError, ConfKind, ConfModuleHom, ConfRep, RepKind, Table,
};
use crate::exactpoly::{Poly, Var};
use crate::par;
use crate::report::{ident, ident_dims, run_all, CheckReport, Ident};
use crate::tensor::Tensor;

/// Index roles in the double sums `Σ_{i,j}` with `r_i ⊗ l_i = R_{ac} e_a ⊗
/// e_c` and `r_j ⊗ l_j = R_{bd} e_b ⊗ e_d`; `K` is the output of the
/// λ-product.
#[derive(Clone, Copy)]
enum Ix {
    A,
    B,
    C,
    D,
    K,
}

/// One term of `[[r, r]]` or `r • r`: `sign · R_{ac}(rac) R_{bd}(rbd)
/// T^{xy}_k(args)` placed at `out`, then `μ ↦ mu`.
struct Term {
    sign: i64,
    rac: [Poly; 2],
    rbd: [Poly; 2],
    prod: (Ix, Ix),
    args: [Poly; 2],
    out: [Ix; 3],
    mu: Poly,
}

fn s(k: usize) -> Poly {
    Poly::slot(k)
}

fn mu() -> Poly {
    Poly::m()
}

fn pick(v: &[usize; 4], k: usize, ix: Ix) -> usize {
    match ix {
        Ix::A => v[0],
        Ix::B => v[1],
        Ix::C => v[2],
        Ix::D => v[3],
        Ix::K => k,
    }
}

fn eval_terms(tab: &Table, r: &Tensor, terms: &[Term]) -> Tensor {
    let n = r.rank;
    let entries = r.nonzero();
    let mut total = Tensor::zeros(n, 3);
    for term in terms {
        let sub = |rs: &[Poly; 2]| -> Vec<(usize, usize, Poly)> {
            let subs = [(Var::D1, rs[0].clone()), (Var::D2, rs[1].clone())];
            entries
                .iter()
                .map(|(ix, p)| (ix[0], ix[1], p.substitute_many(&subs)))
                .collect()
        };
        let left = sub(&term.rac);
        let right = sub(&term.rbd);
        let cs = [
            (Var::LAMBDA, term.args[0].clone()),
            (Var::PARTIAL, term.args[1].clone()),
        ];
        let ctab = tab.map(|p| p.substitute_many(&cs));
        let parts = par::map(&left, |(a, c, p1)| {
            let mut acc = Tensor::zeros(n, 3);
            for (b, d, p2) in &right {
                let v = [*a, *b, *c, *d];
                let (x, y) = (pick(&v, 0, term.prod.0), pick(&v, 0, term.prod.1));
                let pp = p1 * p2;
                for k in 0..n {
                    let cc = ctab.get(x, y, k);
                    if cc.is_zero() {
                        continue;
                    }
                    let out = term.out.map(|ix| pick(&v, k, ix));
                    acc.add_at(&out, &(&pp * cc));
                }
            }
            acc
        });
        let mut acc = Tensor::zeros(n, 3);
        for p in parts {
            acc = acc + p;
        }
        let acc = acc.substitute(Var::MU, &term.mu);
        total = if term.sign > 0 {
            total + acc
        } else {
            total - acc
        };
    }
    total
}

fn check_r(a: &ConfAlgebra, r: &Tensor) -> Result<(), ConfError> {
    if r.order != 2 || r.rank != a.rank {
        return Err(ConfError::Rank("r-matrix".into()));
    }
    for p in &r.data {
        for v in p.vars() {
            if !(v == Var::D1 || v == Var::D2 || v.is_param()) {
                return Err(ConfError::Variable {
                    var: v.name(),
                    place: "r-matrix".into(),
                });
            }
        }
    }
    Ok(())
}

/// `[[r, r]]`. With `C` the bracket, the three terms are
///
/// | term | coefficient                               | at        | `μ ↦` |
/// |------|-------------------------------------------|-----------|-------|
/// | `[r_i μ r_j] ⊗ l_i ⊗ l_j`  | `R_ac(−μ, ∂₂) R_bd(μ+∂₁, ∂₃) C^{ab}(μ, ∂₁)` | `(k, c, d)` | `∂₂` |
/// | `−r_i ⊗ [r_j μ l_i] ⊗ l_j` | `R_ac(∂₁, μ+∂₂) R_bd(−μ, ∂₃) C^{bc}(μ, ∂₂)` | `(a, k, d)` | `∂₃` |
/// | `−r_i ⊗ r_j ⊗ [l_j μ l_i]` | `R_ac(∂₁, μ+∂₃) R_bd(∂₂, −μ) C^{dc}(μ, ∂₃)` | `(a, b, k)` | `∂₂` |
pub fn double_bracket(a: &ConfAlgebra, r: &Tensor) -> Result<Tensor, ConfError> {
    check_r(a, r)?;
    let br = a.op("bracket")?;
    let terms = [
        Term {
            sign: 1,
            rac: [-mu(), s(2)],
            rbd: [mu() + s(1), s(3)],
            prod: (Ix::A, Ix::B),
            args: [mu(), s(1)],
            out: [Ix::K, Ix::C, Ix::D],
            mu: s(2),
        },
        Term {
            sign: -1,
            rac: [s(1), mu() + s(2)],
            rbd: [-mu(), s(3)],
            prod: (Ix::B, Ix::C),
            args: [mu(), s(2)],
            out: [Ix::A, Ix::K, Ix::D],
            mu: s(3),
        },
        Term {
            sign: -1,
            rac: [s(1), mu() + s(3)],
            rbd: [s(2), -mu()],
            prod: (Ix::D, Ix::C),
            args: [mu(), s(3)],
            out: [Ix::A, Ix::B, Ix::K],
            mu: s(2),
        },
    ];
    Ok(eval_terms(br, r, &terms))
}

/// `r • r`. With `T` the product `·_λ`, the three terms are
///
/// | term | coefficient                               | at        | `μ ↦` |
/// |------|-------------------------------------------|-----------|-------|
/// | `r_i ⊗ r_j ⊗ l_i μ l_j`    | `R_ac(∂₁, −μ) R_bd(∂₂, μ+∂₃) T^{cd}(μ, ∂₃)` | `(a, b, k)` | `∂₁`     |
/// | `−r_i ⊗ r_j μ l_i ⊗ l_j`   | `R_ac(∂₁, μ+∂₂) R_bd(−μ, ∂₃) T^{bc}(μ, ∂₂)` | `(a, k, d)` | `−∂₁−∂₂` |
/// | `r_i μ r_j ⊗ l_i ⊗ l_j`    | `R_ac(−μ, ∂₂) R_bd(μ+∂₁, ∂₃) T^{ab}(μ, ∂₁)` | `(k, c, d)` | `∂₂`     |
pub fn bullet_square(a: &ConfAlgebra, r: &Tensor) -> Result<Tensor, ConfError> {
    check_r(a, r)?;
    let mul = a.op("mul")?;
    let terms = [
        Term {
            sign: 1,
            rac: [s(1), -mu()],
            rbd: [s(2), mu() + s(3)],
            prod: (Ix::C, Ix::D),
            args: [mu(), s(3)],
            out: [Ix::A, Ix::B, Ix::K],
            mu: s(1),
        },
        Term {
            sign: -1,
            rac: [s(1), mu() + s(2)],
            rbd: [-mu(), s(3)],
            prod: (Ix::B, Ix::C),
            args: [mu(), s(2)],
            out: [Ix::A, Ix::K, Ix::D],
            mu: neg_slot_sum(2),
        },
        Term {
            sign: 1,
            rac: [-mu(), s(2)],
            rbd: [mu() + s(1), s(3)],
            prod: (Ix::A, Ix::B),
            args: [mu(), s(1)],
            out: [Ix::K, Ix::C, Ix::D],
            mu: s(2),
        },
    ];
    Ok(eval_terms(mul, r, &terms))
}

/// `r + τ r = 0`.
pub fn is_skew(r: &Tensor) -> bool {
    (r + &tau(r)).is_zero()
}

fn residue_at(t: &Tensor, ix: &[usize]) -> Vec<(Vec<usize>, Poly)> {
    let p = t.get(ix);
    let res = p.slot_sum_residue().unwrap_or_else(|_| p.clone());
    if res.is_zero() {
        vec![]
    } else {
        vec![(vec![], res)]
    }
}

/// Both Yang-Baxter tensors modulo `∂₁+∂₂+∂₃`, one instance per
/// coefficient. `P^{⊗3}` is free over `k[∂₁, ∂₂, ∂₃]`, so a tensor lies in
/// `∂^{⊗3}(P^{⊗3})` exactly when every coefficient is divisible by
/// `∂₁+∂₂+∂₃`.
pub fn check_pcybe(a: &ConfAlgebra, r: &Tensor) -> Result<CheckReport, ConfError> {
    let br = double_bracket(a, r)?;
    let bu = bullet_square(a, r)?;
    let n = a.rank;
    let ids = vec![
        ident_dims("PCYBE-bracket", vec![n; 3], move |t| residue_at(&br, t)),
        ident_dims("PCYBE-mul", vec![n; 3], move |t| residue_at(&bu, t)),
    ];
    Ok(run_all("pcybe", n, ids))
}

fn basis_el(n: usize, m: usize) -> Vec<Poly> {
    crate::conformal::basis(n, m)
}

/// `Σ_s φ(x)_Λ` over the listed slots, each with `sign`.
fn slots(tab: &Table, x: &[Poly], lam: &Poly, t: &Tensor, which: &[(usize, i64)]) -> Tensor {
    let mut out = Tensor::zeros(t.rank, t.order);
    for &(s, sign) in which {
        let v = left_slot(tab, x, lam, t, s);
        out = if sign > 0 { out + v } else { out - v };
    }
    out
}

/// The coboundary coproducts
/// `δ(a) = (𝔞𝔡(a)_λ ⊗ I + I ⊗ 𝔞𝔡(a)_λ) r` and
/// `Δ(a) = (I ⊗ 𝔏(a)_λ − 𝔏(a)_λ ⊗ I) r`, both at `λ = −∂^{⊗2}`.
pub fn coboundary_coproducts(a: &ConfAlgebra, r: &Tensor) -> Result<ConfCoalgebra, ConfError> {
    check_r(a, r)?;
    let (br, mul) = (a.op("bracket")?, a.op("mul")?);
    let n = a.rank;
    let lam = neg_slot_sum(2);
    let ms: Vec<usize> = (0..n).collect();
    let parts = par::map(&ms, |&m| {
        let e = basis_el(n, m);
        (
            slots(br, &e, &lam, r, &[(0, 1), (1, 1)]),
            slots(mul, &e, &lam, r, &[(1, 1), (0, -1)]),
        )
    });
    let mut c = ConfCoalgebra::new(n);
    c.zero_coop("delta");
    c.zero_coop("Delta");
    for (m, (d, dd)) in parts.into_iter().enumerate() {
        for (ix, p) in d.nonzero() {
            c.add("delta", m, ix[0], ix[1], p);
        }
        for (ix, p) in dd.nonzero() {
            c.add("Delta", m, ix[0], ix[1], p);
        }
    }
    Ok(c)
}

/// The five conditions, each evaluated on every basis element `a = e_m`:
///
/// * (a) `(𝔞𝔡(a)_λ ⊗ I + I ⊗ 𝔞𝔡(a)_λ)(r + τr)` at `λ = −∂^{⊗2}`;
/// * (b) `(I ⊗ 𝔏(a) − 𝔏(a) ⊗ I)_{−∂^{⊗2}}(r + τr)`;
/// * (c) `Σ_s 𝔞𝔡(a)_λ` on slot `s` of `[[r, r]]` at `λ = −∂^{⊗3}`;
/// * (d) `(I ⊗ I ⊗ 𝔏(a) − 𝔏(a) ⊗ I ⊗ I)_{−∂^{⊗3}}(r • r)`;
/// * (e) `(𝔞𝔡(a)_{−∂^{⊗3}} ⊗ I ⊗ I)(r • r) − (I ⊗ 𝔏(a) ⊗ I − I ⊗ I ⊗
///   𝔏(a))_{−∂^{⊗3}}[[r, r]] + Σ_i ((𝔞𝔡(r_i)_{∂₃} ⊗ I) Y) ⊗ l_i` with
///   `Y = (𝔏(a)_{−∂₁−∂₂} ⊗ I − I ⊗ 𝔏(a)_{−∂₁−∂₂})(r + τr)`.
///
/// All five must vanish exactly.
pub fn check_coboundary_conditions(a: &ConfAlgebra, r: &Tensor) -> Result<CheckReport, ConfError> {
    check_r(a, r)?;
    let (br, mul) = (a.op("bracket")?, a.op("mul")?);
    let n = a.rank;
    let sym = r + &tau(r);
    let rr = double_bracket(a, r)?;
    let bb = bullet_square(a, r)?;
    let l2 = neg_slot_sum(2);
    let l3 = neg_slot_sum(3);
    let entries = r.nonzero();
    let d3 = Poly::var(slot_var(2));
    let ids: Vec<Ident> = vec![
        ident("(a)", 1, {
            let (sym, l2) = (sym.clone(), l2.clone());
            move |t| vnonzero_t(slots(br, &basis_el(n, t[0]), &l2, &sym, &[(0, 1), (1, 1)]))
        }),
        ident("(b)", 1, {
            let (sym, l2) = (sym.clone(), l2.clone());
            move |t| {
                vnonzero_t(slots(
                    mul,
                    &basis_el(n, t[0]),
                    &l2,
                    &sym,
                    &[(1, 1), (0, -1)],
                ))
            }
        }),
        ident("(c)", 1, {
            let (rr, l3) = (rr.clone(), l3.clone());
            move |t| {
                vnonzero_t(slots(
                    br,
                    &basis_el(n, t[0]),
                    &l3,
                    &rr,
                    &[(0, 1), (1, 1), (2, 1)],
                ))
            }
        }),
        ident("(d)", 1, {
            let (bb, l3) = (bb.clone(), l3.clone());
            move |t| vnonzero_t(slots(mul, &basis_el(n, t[0]), &l3, &bb, &[(2, 1), (0, -1)]))
        }),
        ident("(e)", 1, move |t| {
            let e = basis_el(n, t[0]);
            let first = left_slot(br, &e, &l3, &bb, 0);
            let second = slots(mul, &e, &l3, &rr, &[(1, 1), (2, -1)]);
            let y = slots(mul, &e, &l2, &sym, &[(0, 1), (1, -1)]);
            let subs = [(Var::D1, -&d3), (Var::D2, d3.clone())];
            let mut third = Tensor::zeros(n, 3);
            for (ix, p) in &entries {
                let (ai, ci) = (ix[0], ix[1]);
                let coeff = p.substitute_many(&subs);
                let z = left_slot(br, &basis_el(n, ai), &d3, &y, 0);
                for (jx, q) in z.nonzero() {
                    third.add_at(&[jx[0], jx[1], ci], &(&coeff * &q));
                }
            }
            vnonzero_t(first - second + third)
        }),
    ];
    Ok(run_all("coboundary-conditions", n, ids))
}

fn vnonzero_t(t: Tensor) -> Vec<(Vec<usize>, Poly)> {
    t.nonzero()
}

// ---------------------------------------------------------------------------
// O-operators
// ---------------------------------------------------------------------------

/// `T^r_0(e_k*) = Σ_c R_{kc}(−∂, ∂) e_c`, the map `P^{*c} → P` obtained by
/// pairing the first tensor factor at `λ = 0`.
pub fn r_to_conformal_map(r: &Tensor) -> ConfModuleHom {
    let n = r.rank;
    let subs = [(Var::D1, -&Poly::d()), (Var::D2, Poly::d())];
    let mut t = ConfModuleHom::zeros(n, n);
    for (ix, p) in r.nonzero() {
        *t.get_mut(ix[0], ix[1]) += p.substitute_many(&subs);
    }
    t
}

/// The O-operator identities
/// `[T(u)_λ T(v)] = T(ρ(T u)_λ v) − T(ρ(T v)_{−λ−∂} u)` and
/// `T(u)_λ T(v) = T(l(T u)_λ v) + T(l(T v)_{−λ−∂} u)` on basis vectors,
/// without checking that `rep` is a representation. The sign in the
/// bracket identity matches the skew-symmetry of its left side.
pub fn o_operator_identities(
    a: &ConfAlgebra,
    rep: &ConfRep,
    t: &ConfModuleHom,
) -> Result<CheckReport, ConfError> {
    if rep.src != a.rank || t.src != rep.dim || t.dst != a.rank {
        return Err(ConfError::Rank("O-operator".into()));
    }
    let dim = rep.dim;
    let opp = -&(Poly::l() + Poly::d());
    let mut ids = Vec::new();
    for (op, act, sign) in [("bracket", "rho", -1), ("mul", "l", 1)] {
        let (tab, phi) = (a.op(op)?, rep.action(act)?);
        let opp = opp.clone();
        let sign = Poly::int(sign);
        ids.push(ident(format!("O-operator({op})"), 2, move |x| {
            let (u, v) = (basis_el(dim, x[0]), basis_el(dim, x[1]));
            let (tu, tv) = (t.apply(&u), t.apply(&v));
            let lhs = lprod(tab, &tu, &tv, &Poly::l());
            let r1 = t.apply(&lprod(phi, &tu, &v, &Poly::l()));
            let r2: Vec<Poly> = t
                .apply(&lprod(phi, &tv, &u, &opp))
                .iter()
                .map(|p| &sign * p)
                .collect();
            vnonzero(vsub(&lhs, &vadd(&r1, &r2)))
        }));
    }
    Ok(run_all("o-operator", dim, ids))
}

/// [`o_operator_identities`] after checking that `rep` is a representation
/// of the Poisson conformal algebra `a`.
pub fn check_o_operator(
    a: &ConfAlgebra,
    rep: &ConfRep,
    t: &ConfModuleHom,
) -> Result<CheckReport, ConfError> {
    require(check_conf_representation(a, rep, RepKind::PoissonRep)?)?;
    o_operator_identities(a, rep, t)
}

/// `u ∘_λ v = ρ(T u)_λ v` and `u ≻_λ v = l(T u)_λ v` on the module of
/// `rep`.
pub fn pre_poisson_from_o_operator_unchecked(
    rep: &ConfRep,
    t: &ConfModuleHom,
) -> Result<ConfAlgebra, ConfError> {
    if t.src != rep.dim || t.dst != rep.src {
        return Err(ConfError::Rank("O-operator".into()));
    }
    let dim = rep.dim;
    let mut out = ConfAlgebra::new(dim);
    for (op, act) in [("circ", "rho"), ("succ", "l")] {
        let phi = rep.action(act)?;
        out.zero_op(op);
        for i in 0..dim {
            let tu = t.apply(&basis_el(dim, i));
            for j in 0..dim {
                let w = lprod(phi, &tu, &basis_el(dim, j), &Poly::l());
                for (k, p) in w.into_iter().enumerate() {
                    if !p.is_zero() {
                        out.add(op, i, j, k, p);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// [`pre_poisson_from_o_operator_unchecked`] after
/// [`check_o_operator`] passes.
pub fn pre_poisson_from_o_operator(
    a: &ConfAlgebra,
    rep: &ConfRep,
    t: &ConfModuleHom,
) -> Result<ConfAlgebra, ConfError> {
    require(check_o_operator(a, rep, t)?)?;
    pre_poisson_from_o_operator_unchecked(rep, t)
}

// ---------------------------------------------------------------------------
// Pre-Poisson conformal algebras
// ---------------------------------------------------------------------------

/// `[a_λ b] = a ∘_λ b − b ∘_{−λ−∂} a` and `a_λ b = a ≻_λ b + b ≻_{−λ−∂} a`.
pub fn associated_poisson_conformal_unchecked(a: &ConfAlgebra) -> Result<ConfAlgebra, ConfError> {
    let (circ, succ) = (a.op("circ")?, a.op("succ")?);
    let mut out = ConfAlgebra::new(a.rank);
    out.ops.insert("bracket".into(), circ - &circ.opposite());
    out.ops.insert("mul".into(), succ + &succ.opposite());
    Ok(out)
}

/// [`associated_poisson_conformal_unchecked`] after checking that `a` is a
/// pre-Poisson conformal algebra.
pub fn associated_poisson_conformal(a: &ConfAlgebra) -> Result<ConfAlgebra, ConfError> {
    require(check_conf_structure(ConfKind::PrePoissonConf, a)?)?;
    associated_poisson_conformal_unchecked(a)
}

/// `P ⋉_{𝔏_∘*, −𝔏_≻*} P^{*c}` for the associated Poisson conformal
/// algebra `P` of `a`, with `r = Σ_i (e_i ⊗ e_i* − e_i* ⊗ e_i)`.
pub fn canonical_pcybe_solution_unchecked(
    a: &ConfAlgebra,
) -> Result<(ConfAlgebra, Tensor), ConfError> {
    let n = a.rank;
    let p = associated_poisson_conformal_unchecked(a)?;
    let rep = dual_representation_unchecked(&ConfRep::regular(a, "circ", "succ"));
    let hat = semidirect_unchecked(&p, &rep)?;
    let mut r = Tensor::zeros(2 * n, 2);
    for i in 0..n {
        *r.get_mut(&[i, n + i]) = Poly::one();
        *r.get_mut(&[n + i, i]) = Poly::int(-1);
    }
    Ok((hat, r))
}

/// [`canonical_pcybe_solution_unchecked`] after checking that `a` is a
/// pre-Poisson conformal algebra.
pub fn canonical_pcybe_solution(a: &ConfAlgebra) -> Result<(ConfAlgebra, Tensor), ConfError> {
    require(check_conf_structure(ConfKind::PrePoissonConf, a)?)?;
    canonical_pcybe_solution_unchecked(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s, &[]).unwrap()
    }

    fn virasoro() -> ConfAlgebra {
        let mut a = ConfAlgebra::new(1);
        a.add("bracket", 0, 0, 0, p("d + 2*l"));
        a.zero_op("mul");
        a
    }

    #[test]
    fn zero_r_gives_zero_tensors() {
        let a = virasoro();
        let r = Tensor::zeros(1, 2);
        assert!(double_bracket(&a, &r).unwrap().is_zero());
        assert!(bullet_square(&a, &r).unwrap().is_zero());
        assert!(check_pcybe(&a, &r).unwrap().passed());
        let c = coboundary_coproducts(&a, &r).unwrap();
        assert!(c.coop("delta").unwrap().is_zero());
        assert!(r_to_conformal_map(&r).is_zero());
    }

    #[test]
    fn virasoro_b_tensor_b_fails_pcybe() {
        let a = virasoro();
        let mut r = Tensor::zeros(1, 2);
        *r.get_mut(&[0, 0]) = Poly::one();
        let rep = check_pcybe(&a, &r).unwrap();
        assert!(!rep.get("PCYBE-bracket").unwrap().passed());
        assert!(rep.get("PCYBE-mul").unwrap().passed());
    }

    #[test]
    fn skew_detection() {
        let mut r = Tensor::zeros(2, 2);
        *r.get_mut(&[0, 1]) = p("d1");
        *r.get_mut(&[1, 0]) = p("-d2");
        assert!(is_skew(&r));
        *r.get_mut(&[1, 0]) = p("-d1");
        assert!(!is_skew(&r));
    }
}
