//! The correspondence `P = k[∂] ⊗ A` between finite-dimensional
//! structures and conformal ones, for algebras, coalgebras, bialgebras and
//! pre-structures, and the end-to-end pipeline of the final example.

use crate::conformal::{
    check_conf_bialgebra, check_conf_coalgebra, check_conf_representation, check_conf_structure,
    dual_representation_unchecked, ConfAlgebra, ConfBiKind, ConfCoKind, ConfCoalgebra, ConfError,
    ConfKind, ConfRep, RepKind, Table,
};
use crate::exactpoly::{Poly, Var};
use crate::findim::{
    associated_pgd, check_derivation, check_fin_bialgebra, check_fin_coalgebra,
    check_fin_structure, pre_pgd_from_zinbiel, star_tensor, BiKind, CoKind, FinError, FinStructure,
    StructureKind,
};
use crate::report::{run_identity, tuples, CheckReport, IdentityResult};
use crate::tensor::Tensor;
use crate::ybe::{
    associated_poisson_conformal_unchecked, canonical_pcybe_solution_unchecked,
    check_coboundary_conditions, check_pcybe, coboundary_coproducts,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error(transparent)]
    Fin(#[from] FinError),
    #[error(transparent)]
    Conf(#[from] ConfError),
    #[error("stage `{stage}` failed")]
    Stage {
        stage: String,
        report: Box<CheckReport>,
    },
}

fn require(report: CheckReport) -> Result<(), BridgeError> {
    if report.passed() {
        Ok(())
    } else {
        Err(FinError::Precondition(Box::new(report)).into())
    }
}

/// `a` with every listed operation or coproduct that is absent set to 0.
fn with_zeros(a: &FinStructure, ops: &[&str], coops: &[&str]) -> FinStructure {
    let mut out = a.clone();
    for op in ops {
        if !out.ops.contains_key(*op) {
            out.zero_op(op);
        }
    }
    for co in coops {
        if !out.coops.contains_key(*co) {
            out.zero_coop(co);
        }
    }
    out
}

/// The PGD operations of `a`, with an absent `bracket` read as 0 (the
/// differential Novikov-Poisson case).
pub fn pgd_completion(a: &FinStructure) -> FinStructure {
    let mut out = with_zeros(a, &["bracket"], &[]);
    out.ops.remove("star");
    out
}

// ---------------------------------------------------------------------------
// Algebras
// ---------------------------------------------------------------------------

/// `[a_λ b] = ∂(b ∘ a) + λ(b ⋆ a) + [a, b]` and `a_λ b = a · b`, without
/// checking the PGD axioms.
pub fn pgd_to_conformal_unchecked(a: &FinStructure) -> Result<ConfAlgebra, BridgeError> {
    let a = pgd_completion(a);
    let n = a.dim;
    let circ = a.op("circ")?;
    let star = star_tensor(circ);
    let br = a.op("bracket")?;
    let dot = a.op("dot")?;
    let mut out = ConfAlgebra::new(n);
    out.zero_op("bracket");
    out.zero_op("mul");
    let (d, l) = (Poly::d(), Poly::l());
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let p = &(&d * circ.get(&[j, i, k]))
                    + &(&l * star.get(&[j, i, k]))
                    + br.get(&[i, j, k]);
                if !p.is_zero() {
                    out.add("bracket", i, j, k, p);
                }
                let m = dot.get(&[i, j, k]);
                if !m.is_zero() {
                    out.add("mul", i, j, k, m.clone());
                }
            }
        }
    }
    Ok(out)
}

/// [`pgd_to_conformal_unchecked`] after checking the PGD axioms.
pub fn pgd_to_conformal(a: &FinStructure) -> Result<ConfAlgebra, BridgeError> {
    require(check_fin_structure(StructureKind::PGD, &pgd_completion(a))?)?;
    pgd_to_conformal_unchecked(a)
}

/// `a ∘_λ b = ∂(b ◁ a) + λ(a ▷ b + b ◁ a) + a ◇ b` and `a ≻_λ b = a ≻ b`,
/// with an absent `diamond` read as 0.
pub fn pre_pgd_to_pre_poisson_conformal_unchecked(
    a: &FinStructure,
) -> Result<ConfAlgebra, BridgeError> {
    let a = with_zeros(a, &["diamond"], &[]);
    let n = a.dim;
    let (lhd, rhd, dia, succ) = (a.op("lhd")?, a.op("rhd")?, a.op("diamond")?, a.op("succ")?);
    let mut out = ConfAlgebra::new(n);
    out.zero_op("circ");
    out.zero_op("succ");
    let (d, l) = (Poly::d(), Poly::l());
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let p = &(&d * lhd.get(&[j, i, k]))
                    + &(&l * &(rhd.get(&[i, j, k]) + lhd.get(&[j, i, k])))
                    + dia.get(&[i, j, k]);
                if !p.is_zero() {
                    out.add("circ", i, j, k, p);
                }
                let s = succ.get(&[i, j, k]);
                if !s.is_zero() {
                    out.add("succ", i, j, k, s.clone());
                }
            }
        }
    }
    Ok(out)
}

/// [`pre_pgd_to_pre_poisson_conformal_unchecked`] after checking the
/// pre-PGD axioms.
pub fn pre_pgd_to_pre_poisson_conformal(a: &FinStructure) -> Result<ConfAlgebra, BridgeError> {
    require(check_fin_structure(StructureKind::PrePGD, a)?)?;
    pre_pgd_to_pre_poisson_conformal_unchecked(a)
}

// ---------------------------------------------------------------------------
// Coalgebras and bialgebras
// ---------------------------------------------------------------------------

/// `δ = (∂ ⊗ I)Δ₁ − τ(∂ ⊗ I)Δ₁ + δ₀` and `Δ = Δ₂`, with absent coproducts
/// read as 0.
pub fn pgd_coalgebra_to_conformal(a: &FinStructure) -> ConfCoalgebra {
    let a = with_zeros(a, &[], &["Delta1", "Delta2", "delta0"]);
    let n = a.dim;
    let (d1, d2, d0) = (&a.coops["Delta1"], &a.coops["Delta2"], &a.coops["delta0"]);
    let (s1, s2) = (Poly::var(Var::D1), Poly::var(Var::D2));
    let mut c = ConfCoalgebra::new(n);
    c.zero_coop("delta");
    c.zero_coop("Delta");
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let p = &(&(&s1 * d1.get(&[k, i, j])) - &(&s2 * d1.get(&[k, j, i])))
                    + d0.get(&[k, i, j]);
                if !p.is_zero() {
                    c.add("delta", k, i, j, p);
                }
                let q = d2.get(&[k, i, j]);
                if !q.is_zero() {
                    c.add("Delta", k, i, j, q.clone());
                }
            }
        }
    }
    c
}

/// The PGD-structure, PGD-coalgebra and PGD-bialgebra checks of `a`,
/// merged into one report.
pub fn check_pgd_bialgebra(a: &FinStructure) -> Result<CheckReport, BridgeError> {
    let a = with_zeros(&pgd_completion(a), &[], &["Delta1", "Delta2", "delta0"]);
    let mut rep = check_fin_structure(StructureKind::PGD, &a)?;
    rep.merge(check_fin_coalgebra(CoKind::PGDCo, &a)?);
    rep.merge(check_fin_bialgebra(BiKind::PGDBi, &a)?);
    rep.title = "pgd-bialgebra".into();
    Ok(rep)
}

/// The Poisson conformal bialgebra `k[∂] ⊗ A` of a PGD-bialgebra, without
/// checking the hypothesis.
pub fn pgd_bialgebra_to_conf_bialgebra_unchecked(
    a: &FinStructure,
) -> Result<(ConfAlgebra, ConfCoalgebra), BridgeError> {
    Ok((
        pgd_to_conformal_unchecked(a)?,
        pgd_coalgebra_to_conformal(a),
    ))
}

/// [`pgd_bialgebra_to_conf_bialgebra_unchecked`] after
/// [`check_pgd_bialgebra`] passes.
pub fn pgd_bialgebra_to_conf_bialgebra(
    a: &FinStructure,
) -> Result<(ConfAlgebra, ConfCoalgebra), BridgeError> {
    require(check_pgd_bialgebra(a)?)?;
    pgd_bialgebra_to_conf_bialgebra_unchecked(a)
}

/// The Poisson conformal algebra, coalgebra and bialgebra checks of
/// `(a, c)`, merged into one report.
pub fn check_poisson_conf_bialgebra(
    a: &ConfAlgebra,
    c: &ConfCoalgebra,
) -> Result<CheckReport, ConfError> {
    let mut rep = check_conf_structure(ConfKind::PoissonConf, a)?;
    rep.merge(check_conf_coalgebra(ConfCoKind::PoissonCoConf, c)?);
    rep.merge(check_conf_bialgebra(ConfBiKind::PoissonConfBi, a, c)?);
    rep.title = "poisson-conformal-bialgebra".into();
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Exact comparison
// ---------------------------------------------------------------------------

fn table_difference(id: &str, a: &Table, b: &Table, rep: &mut CheckReport) {
    let n = a.left;
    let ts = tuples(n, 2);
    rep.push(run_identity(id, &ts, |t| {
        (0..a.out)
            .filter_map(|k| {
                let d = a.get(t[0], t[1], k) - b.get(t[0], t[1], k);
                (!d.is_zero()).then(|| (vec![k], d))
            })
            .collect()
    }));
}

/// One identity `equal(op)` per λ-product of either algebra; absent
/// products count as 0.
pub fn algebra_difference(title: &str, a: &ConfAlgebra, b: &ConfAlgebra) -> CheckReport {
    let mut rep = CheckReport::new(title);
    if a.rank != b.rank {
        rep.push(IdentityResult {
            id: "rank".into(),
            instances: 1,
            failures: 1,
            witnesses: Vec::new(),
        });
        rep.note(format!("rank {} vs {}", a.rank, b.rank));
        return rep;
    }
    let zero = Table::square(a.rank);
    let names: std::collections::BTreeSet<&String> = a.ops.keys().chain(b.ops.keys()).collect();
    for name in names {
        let x = a.ops.get(name).unwrap_or(&zero);
        let y = b.ops.get(name).unwrap_or(&zero);
        table_difference(&format!("equal({name})"), x, y, &mut rep);
    }
    rep
}

/// One identity `equal(name)` per coproduct of either coalgebra; absent
/// coproducts count as 0.
pub fn coalgebra_difference(title: &str, a: &ConfCoalgebra, b: &ConfCoalgebra) -> CheckReport {
    let mut rep = CheckReport::new(title);
    let n = a.rank.max(b.rank);
    let zero = Tensor::zeros(n, 3);
    let names: std::collections::BTreeSet<&String> = a.coops.keys().chain(b.coops.keys()).collect();
    let ts = tuples(n, 1);
    for name in names {
        let x = a.coops.get(name).unwrap_or(&zero);
        let y = b.coops.get(name).unwrap_or(&zero);
        rep.push(run_identity(&format!("equal({name})"), &ts, |t| {
            let mut out = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let d = x.get(&[t[0], i, j]) - y.get(&[t[0], i, j]);
                    if !d.is_zero() {
                        out.push((vec![i, j], d));
                    }
                }
            }
            out
        }));
    }
    rep
}

// ---------------------------------------------------------------------------
// The Zinbiel-to-bialgebra pipeline
// ---------------------------------------------------------------------------

/// A named pipeline stage and the check run on its output.
#[derive(Clone, Debug)]
pub struct Stage {
    pub id: String,
    pub report: CheckReport,
}

/// Every intermediate of the pipeline from a Zinbiel algebra with a
/// derivation to a coboundary Poisson conformal bialgebra.
#[derive(Clone, Debug)]
pub struct PipelineBundle {
    pub zinbiel: FinStructure,
    pub derivation: Tensor,
    /// `(A, ◁, ▷, ≻)` with `◇ = 0`.
    pub pre_pgd: FinStructure,
    /// The pre-Poisson conformal algebra `(P, ∘_λ, ≻_λ)`.
    pub pre_conf: ConfAlgebra,
    /// The associated Poisson conformal algebra.
    pub poisson: ConfAlgebra,
    /// The PGD-algebra associated with `pre_pgd`.
    pub pgd: FinStructure,
    /// `pgd_to_conformal(pgd)`, compared against `poisson`.
    pub poisson_via_pgd: ConfAlgebra,
    /// `P̂ = P ⋉_{𝔏_∘*, −𝔏_≻*} P^{*c}`, duals at indices `n..2n`.
    pub hat: ConfAlgebra,
    pub r: Tensor,
    /// Coboundary `δ` and `Δ` of `r` on `P̂`.
    pub coalgebra: ConfCoalgebra,
    pub stages: Vec<Stage>,
}

impl PipelineBundle {
    pub fn passed(&self) -> bool {
        self.stages.iter().all(|s| s.report.passed())
    }

    pub fn stage(&self, id: &str) -> Option<&CheckReport> {
        self.stages.iter().find(|s| s.id == id).map(|s| &s.report)
    }
}

struct Stages {
    strict: bool,
    done: Vec<Stage>,
}

impl Stages {
    fn record(&mut self, id: &str, report: CheckReport) -> Result<(), BridgeError> {
        if self.strict && !report.passed() {
            return Err(BridgeError::Stage {
                stage: id.into(),
                report: Box::new(report),
            });
        }
        self.done.push(Stage {
            id: id.into(),
            report,
        });
        Ok(())
    }
}

/// Run Zinbiel + derivation → pre-PGD → pre-Poisson conformal → associated
/// Poisson conformal (cross-checked against the PGD route) → `P̂` with the
/// canonical `r` → coboundary coproducts, checking each stage.
///
/// With `strict` the first failing stage aborts with
/// [`BridgeError::Stage`]; otherwise every stage runs and its report is
/// kept in the bundle.
pub fn run_pipeline(
    zinbiel: &FinStructure,
    derivation: &Tensor,
    strict: bool,
) -> Result<PipelineBundle, BridgeError> {
    let mut st = Stages {
        strict,
        done: Vec::new(),
    };
    let mut zd = check_fin_structure(StructureKind::Zinbiel, zinbiel)?;
    zd.merge(check_derivation(zinbiel, "succ", derivation)?);
    zd.title = "zinbiel+derivation".into();
    st.record("zinbiel+derivation", zd)?;

    let pre_pgd = pre_pgd_from_zinbiel(zinbiel, derivation)?;
    st.record(
        "pre-pgd",
        check_fin_structure(StructureKind::PrePGD, &pre_pgd)?,
    )?;

    let pre_conf = pre_pgd_to_pre_poisson_conformal_unchecked(&pre_pgd)?;
    st.record(
        "pre-poisson-conformal",
        check_conf_structure(ConfKind::PrePoissonConf, &pre_conf)?,
    )?;

    let poisson = associated_poisson_conformal_unchecked(&pre_conf)?;
    st.record(
        "poisson-conformal",
        check_conf_structure(ConfKind::PoissonConf, &poisson)?,
    )?;

    let pgd = associated_pgd(&pre_pgd)?;
    let poisson_via_pgd = pgd_to_conformal_unchecked(&pgd)?;
    st.record(
        "commutative-square",
        algebra_difference("commutative-square", &poisson, &poisson_via_pgd),
    )?;

    let rep = dual_representation_unchecked(&ConfRep::regular(&pre_conf, "circ", "succ"));
    let mut rrep = check_conf_representation(&poisson, &rep, RepKind::PoissonRep)?;
    rrep.title = "dual-representation".into();
    st.record("dual-representation", rrep)?;

    let (hat, r) = canonical_pcybe_solution_unchecked(&pre_conf)?;
    st.record(
        "semidirect",
        check_conf_structure(ConfKind::PoissonConf, &hat)?,
    )?;
    st.record("pcybe", check_pcybe(&hat, &r)?)?;
    st.record(
        "coboundary-conditions",
        check_coboundary_conditions(&hat, &r)?,
    )?;

    let coalgebra = coboundary_coproducts(&hat, &r)?;
    st.record("bialgebra", check_poisson_conf_bialgebra(&hat, &coalgebra)?)?;

    Ok(PipelineBundle {
        zinbiel: zinbiel.clone(),
        derivation: derivation.clone(),
        pre_pgd,
        pre_conf,
        poisson,
        pgd,
        poisson_via_pgd,
        hat,
        r,
        coalgebra,
        stages: st.done,
    })
}

/// The pipeline on the final example's data with parameter `alpha`, every
/// stage recorded.
pub fn full_pipeline_final_example(alpha: &Poly) -> Result<PipelineBundle, BridgeError> {
    let (z, d) = crate::examples::final_example(alpha, crate::examples::FinalVariant::Published);
    run_pipeline(&z, &d, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_pgd_gives_zero_conformal() {
        let mut a = FinStructure::new(2);
        a.zero_op("circ");
        a.zero_op("dot");
        let c = pgd_to_conformal(&a).unwrap();
        assert!(c.op("bracket").unwrap().is_zero());
        assert!(c.op("mul").unwrap().is_zero());
        let co = pgd_coalgebra_to_conformal(&a);
        assert!(co.coop("delta").unwrap().is_zero());
    }

    #[test]
    fn rank_one_gd_gives_virasoro() {
        let mut a = FinStructure::new(1);
        a.add_op("circ", 0, 0, 0, Poly::one());
        a.zero_op("dot");
        let c = pgd_to_conformal(&a).unwrap();
        assert_eq!(
            c.op("bracket").unwrap().get(0, 0, 0),
            &Poly::parse("d + 2*l", &[]).unwrap()
        );
    }

    #[test]
    fn difference_reports_mismatch() {
        let mut a = ConfAlgebra::new(1);
        a.add("mul", 0, 0, 0, Poly::one());
        let b = ConfAlgebra::new(1);
        let rep = algebra_difference("t", &a, &b);
        assert!(!rep.passed());
        assert!(algebra_difference("t", &a, &a).passed());
    }
}
