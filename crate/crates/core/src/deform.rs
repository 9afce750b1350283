//! Truncated formal deformations `a ∘^h_λ b = a_λ b + Σ_k h^k {a_λ b}_k`
//! and `Δ_h = Δ + Σ_k h^k Δ_k` of commutative and cocommutative ASI
//! conformal bialgebras, checked order by order in `h` modulo `h^N`, and
//! their semi-classical limits.

use crate::bridges::check_poisson_conf_bialgebra;
use crate::conformal::{
    asi1_residual, asi2_residual, basis, check_conf_coalgebra, check_conf_structure, co_basis,
    co_slot, lprod, tau, vnonzero, vsub, ConfAlgebra, ConfCoKind, ConfCoalgebra, ConfError,
    ConfKind, Table,
};
use crate::exactpoly::Poly;
use crate::report::{ident, run_all, CheckReport, Ident};
use crate::tensor::Tensor;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformError {
    #[error("truncation order must be at least {min}, got {got}")]
    Order { min: usize, got: usize },
    #[error("expected {expected} corrections, got {got}")]
    Corrections { expected: usize, got: usize },
    #[error("rank mismatch: {0}")]
    Rank(String),
    #[error(transparent)]
    Conf(#[from] ConfError),
    #[error("precondition failed{}", order.map(|o| format!(" at order h^{o}")).unwrap_or_default())]
    Precondition {
        order: Option<usize>,
        report: Box<CheckReport>,
    },
}

/// `∘^h` modulo `h^order`: `corrections[k−1]` is the order-`k` table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedDeformation {
    pub base: ConfAlgebra,
    pub order: usize,
    pub corrections: Vec<Table>,
}

/// `Δ_h` modulo `h^order`: `corrections[k−1]` is `Δ_k` as `[k][i][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedCoDeformation {
    pub base: ConfCoalgebra,
    pub order: usize,
    pub corrections: Vec<Tensor>,
}

impl TruncatedDeformation {
    /// The zero deformation of `base`.
    pub fn trivial(base: ConfAlgebra, order: usize) -> TruncatedDeformation {
        let n = base.rank;
        TruncatedDeformation {
            base,
            order,
            corrections: vec![Table::square(n); order.saturating_sub(1)],
        }
    }

    pub fn validate(&self) -> Result<(), DeformError> {
        if self.order < 1 {
            return Err(DeformError::Order {
                min: 1,
                got: self.order,
            });
        }
        if self.corrections.len() != self.order - 1 {
            return Err(DeformError::Corrections {
                expected: self.order - 1,
                got: self.corrections.len(),
            });
        }
        self.base.validate()?;
        let n = self.base.rank;
        for t in &self.corrections {
            if (t.left, t.right, t.out) != (n, n, n) {
                return Err(DeformError::Rank("deformation correction".into()));
            }
        }
        Ok(())
    }

    /// The order-`k` table, with `k = 0` the base product.
    pub fn term(&self, k: usize) -> Result<Table, DeformError> {
        if k == 0 {
            Ok(self.base.op("mul")?.clone())
        } else {
            Ok(self.corrections[k - 1].clone())
        }
    }
}

impl TruncatedCoDeformation {
    /// The zero co-deformation of `base`.
    pub fn trivial(base: ConfCoalgebra, order: usize) -> TruncatedCoDeformation {
        let n = base.rank;
        TruncatedCoDeformation {
            base,
            order,
            corrections: vec![Tensor::zeros(n, 3); order.saturating_sub(1)],
        }
    }

    pub fn validate(&self) -> Result<(), DeformError> {
        if self.order < 1 {
            return Err(DeformError::Order {
                min: 1,
                got: self.order,
            });
        }
        if self.corrections.len() != self.order - 1 {
            return Err(DeformError::Corrections {
                expected: self.order - 1,
                got: self.corrections.len(),
            });
        }
        self.base.validate()?;
        let n = self.base.rank;
        for t in &self.corrections {
            if (t.rank, t.order) != (n, 3) {
                return Err(DeformError::Rank("co-deformation correction".into()));
            }
        }
        Ok(())
    }

    /// `Δ_k`, with `k = 0` the base coproduct.
    pub fn term(&self, k: usize) -> Result<Tensor, DeformError> {
        if k == 0 {
            Ok(self.base.coop("Delta")?.clone())
        } else {
            Ok(self.corrections[k - 1].clone())
        }
    }
}

fn terms(d: &TruncatedDeformation) -> Result<Vec<Table>, DeformError> {
    (0..d.order).map(|k| d.term(k)).collect()
}

fn coterms(c: &TruncatedCoDeformation) -> Result<Vec<Tensor>, DeformError> {
    (0..c.order).map(|k| c.term(k)).collect()
}

/// Associativity of `∘^h`, `a ∘_λ (b ∘_μ c) = (a ∘_λ b) ∘_{λ+μ} c`, as one
/// identity per power `h^p`, `p < N`.
pub fn check_truncated_deformation(d: &TruncatedDeformation) -> Result<CheckReport, DeformError> {
    d.validate()?;
    let ts = terms(d)?;
    let n = d.base.rank;
    let ts = &ts;
    let ids: Vec<Ident> = (0..d.order)
        .map(|p| {
            ident(format!("associativity(h^{p})"), 3, move |t| {
                let (a, b, c) = (basis(n, t[0]), basis(n, t[1]), basis(n, t[2]));
                let mut res = vec![Poly::zero(); n];
                for i in 0..=p {
                    let (ti, tj) = (&ts[i], &ts[p - i]);
                    let left = lprod(ti, &a, &lprod(tj, &b, &c, &Poly::m()), &Poly::l());
                    let right = lprod(
                        tj,
                        &lprod(ti, &a, &b, &Poly::l()),
                        &c,
                        &(Poly::l() + Poly::m()),
                    );
                    res = crate::conformal::vadd(&res, &vsub(&left, &right));
                }
                vnonzero(res)
            })
        })
        .collect();
    Ok(run_all("truncated-deformation", n, ids))
}

/// Coassociativity of `Δ_h`, `(I ⊗ Δ_h)Δ_h = (Δ_h ⊗ I)Δ_h`, per power of
/// `h`.
pub fn check_truncated_codeformation(
    c: &TruncatedCoDeformation,
) -> Result<CheckReport, DeformError> {
    c.validate()?;
    let qs = coterms(c)?;
    let n = c.base.rank;
    let qs = &qs;
    let ids: Vec<Ident> = (0..c.order)
        .map(|p| {
            ident(format!("coassociativity(h^{p})"), 1, move |t| {
                let mut res = Tensor::zeros(n, 3);
                for i in 0..=p {
                    let x = co_basis(&qs[i], t[0]);
                    res = res + (&co_slot(&x, 1, &qs[p - i]) - &co_slot(&x, 0, &qs[p - i]));
                }
                res.nonzero()
            })
        })
        .collect();
    Ok(run_all("truncated-codeformation", n, ids))
}

/// Both ASI compatibilities of `(∘^h, Δ_h)` per power of `h`; each is
/// bilinear, so the `h^p` part is `Σ_{i+j=p}` of the identity on
/// `({·}_i, Δ_j)`.
pub fn check_truncated_asi(
    d: &TruncatedDeformation,
    c: &TruncatedCoDeformation,
) -> Result<CheckReport, DeformError> {
    d.validate()?;
    c.validate()?;
    if d.base.rank != c.base.rank || d.order != c.order {
        return Err(DeformError::Rank("deformation and co-deformation".into()));
    }
    let ts = terms(d)?;
    let qs = coterms(c)?;
    let n = d.base.rank;
    let (ts, qs) = (&ts, &qs);
    let mut ids: Vec<Ident> = Vec::new();
    for p in 0..d.order {
        ids.push(ident(format!("1-thq(h^{p})"), 2, move |t| {
            let mut res = Tensor::zeros(n, 2);
            for i in 0..=p {
                res = res + asi1_residual(&ts[i], &qs[p - i], t[0], t[1]);
            }
            res.nonzero()
        }));
        ids.push(ident(format!("2-thq(h^{p})"), 2, move |t| {
            let mut res = Tensor::zeros(n, 2);
            for i in 0..=p {
                res = res + asi2_residual(&ts[i], &qs[p - i], t[0], t[1]);
            }
            res.nonzero()
        }));
    }
    Ok(run_all("truncated-asi", n, ids))
}

fn failing_order(rep: &CheckReport) -> Option<usize> {
    rep.failed_ids()
        .iter()
        .filter_map(|id| {
            let start = id.find("(h^")? + 3;
            id[start..].trim_end_matches(')').parse().ok()
        })
        .min()
}

/// All hypotheses of [`semiclassical_limit`] in one report: the base is a
/// commutative and cocommutative bialgebra and the three order-by-order
/// checks pass.
pub fn check_deformation_hypotheses(
    d: &TruncatedDeformation,
    c: &TruncatedCoDeformation,
) -> Result<CheckReport, DeformError> {
    let mut rep = check_conf_structure(ConfKind::CommAssocConf, &d.base)?;
    rep.merge(check_conf_coalgebra(ConfCoKind::CoassocCocomm, &c.base)?);
    rep.merge(check_truncated_deformation(d)?);
    rep.merge(check_truncated_codeformation(c)?);
    rep.merge(check_truncated_asi(d, c)?);
    rep.title = "deformation-hypotheses".into();
    Ok(rep)
}

/// The semi-classical limit without checking the hypotheses:
/// `[a_λ b] = {a_λ b}_1 − {b_{−λ−∂} a}_1` and `δ = Δ_1 − τΔ_1`, with the
/// base product and coproduct, followed by the Poisson conformal bialgebra
/// check of the result.
pub fn semiclassical_limit_unchecked(
    d: &TruncatedDeformation,
    c: &TruncatedCoDeformation,
) -> Result<(ConfAlgebra, ConfCoalgebra, CheckReport), DeformError> {
    d.validate()?;
    c.validate()?;
    if d.order < 2 || c.order < 2 {
        return Err(DeformError::Order {
            min: 2,
            got: d.order.min(c.order),
        });
    }
    let n = d.base.rank;
    let t1 = &d.corrections[0];
    let mut alg = ConfAlgebra::new(n);
    alg.ops.insert("mul".into(), d.term(0)?);
    alg.ops.insert("bracket".into(), t1 - &t1.opposite());
    let q1 = &c.corrections[0];
    let mut co = ConfCoalgebra::new(n);
    co.coops.insert("Delta".into(), c.term(0)?);
    co.zero_coop("delta");
    for k in 0..n {
        let x = co_basis(q1, k);
        for (ix, p) in (&x - &tau(&x)).nonzero() {
            co.add("delta", k, ix[0], ix[1], p);
        }
    }
    let rep = check_poisson_conf_bialgebra(&alg, &co)?;
    Ok((alg, co, rep))
}

/// [`semiclassical_limit_unchecked`] for `N ≥ 3` after
/// [`check_deformation_hypotheses`] passes. Jacobi for the limit bracket
/// uses associativity through `h²`, hence the order bound.
pub fn semiclassical_limit(
    d: &TruncatedDeformation,
    c: &TruncatedCoDeformation,
) -> Result<(ConfAlgebra, ConfCoalgebra, CheckReport), DeformError> {
    let got = d.order.min(c.order);
    if got < 3 {
        return Err(DeformError::Order { min: 3, got });
    }
    let rep = check_deformation_hypotheses(d, c)?;
    if !rep.passed() {
        return Err(DeformError::Precondition {
            order: failing_order(&rep),
            report: Box::new(rep),
        });
    }
    semiclassical_limit_unchecked(d, c)
}

// ---------------------------------------------------------------------------
// Builtin deformations
// ---------------------------------------------------------------------------

fn zero_bialgebra(n: usize) -> (ConfAlgebra, ConfCoalgebra) {
    let mut a = ConfAlgebra::new(n);
    a.zero_op("mul");
    let mut c = ConfCoalgebra::new(n);
    c.zero_coop("Delta");
    (a, c)
}

/// Rank 1 with zero product and coproduct, `{b_λ b}_1 = (∂ + 2λ) b` and
/// all other corrections 0.
pub fn virasoro_deformation(order: usize) -> (TruncatedDeformation, TruncatedCoDeformation) {
    let (a, c) = zero_bialgebra(1);
    let mut d = TruncatedDeformation::trivial(a, order);
    if let Some(t) = d.corrections.first_mut() {
        t.add_at(0, 0, 0, &(Poly::d() + &Poly::int(2) * &Poly::l()));
    }
    (d, TruncatedCoDeformation::trivial(c, order))
}

/// Rank 2 with zero product and coproduct and `{·}_1` the constant
/// products of the algebra `e₀e₀ = e₀`, `e₀e₁ = e₁`, `e₁e₀ = e₁e₁ = 0`.
pub fn current_deformation(order: usize) -> (TruncatedDeformation, TruncatedCoDeformation) {
    let (a, c) = zero_bialgebra(2);
    let mut d = TruncatedDeformation::trivial(a, order);
    if let Some(t) = d.corrections.first_mut() {
        t.add_at(0, 0, 0, &Poly::one());
        t.add_at(0, 1, 1, &Poly::one());
    }
    (d, TruncatedCoDeformation::trivial(c, order))
}

/// The zero deformation of the rank-`n` zero bialgebra.
pub fn zero_deformation(n: usize, order: usize) -> (TruncatedDeformation, TruncatedCoDeformation) {
    let (a, c) = zero_bialgebra(n);
    (
        TruncatedDeformation::trivial(a, order),
        TruncatedCoDeformation::trivial(c, order),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two_is_rejected() {
        let (d, c) = zero_deformation(1, 2);
        assert!(matches!(
            semiclassical_limit(&d, &c),
            Err(DeformError::Order { min: 3, got: 2 })
        ));
    }

    #[test]
    fn failing_order_is_parsed() {
        let (d, c) = virasoro_deformation(3);
        let err = semiclassical_limit(&d, &c).unwrap_err();
        assert!(matches!(
            err,
            DeformError::Precondition { order: Some(2), .. }
        ));
    }

    #[test]
    fn current_deformation_limit_passes() {
        let (d, c) = current_deformation(3);
        let (alg, _, rep) = semiclassical_limit(&d, &c).unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(alg.op("bracket").unwrap().get(0, 1, 1), &Poly::one());
        assert_eq!(alg.op("bracket").unwrap().get(1, 0, 1), &Poly::int(-1));
    }
}
