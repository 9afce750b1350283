//! Command implementations. Each command returns an [`Outcome`] holding
//! the reports it produced and its exit status; rendering is separate so
//! that the same outcome prints as text or JSON.

use crate::builtins;
use crate::spec::{SpecError, SpecFile};
use confalg::bridges::{self, BridgeError};
use confalg::conformal::{
    self, check_conf_bialgebra, check_conf_coalgebra, check_conf_structure, ConfAlgebra,
    ConfBiKind, ConfCoKind, ConfCoalgebra, ConfError, ConfKind, ConfRep,
};
use confalg::deform::{self, DeformError};
use confalg::exactpoly::Poly;
use confalg::examples::{self, FinalVariant};
use confalg::findim::{self, BiKind, CoKind, FinError, FinStructure, StructureKind};
use confalg::tensor::Tensor;
use confalg::{ybe, CheckReport};
use serde_json::json;
use std::fmt::Write as _;

/// A usage, input or parse error (exit status 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError(pub String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CliError {}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> CliError {
        CliError(e.to_string())
    }
}

/// The result of a command.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub command: String,
    pub reports: Vec<CheckReport>,
    /// Reports shown for information only; they do not affect the status.
    pub diagnostics: Vec<CheckReport>,
    pub notes: Vec<String>,
    /// A spec file produced by the command.
    pub output: Option<SpecFile>,
}

impl Outcome {
    fn new(command: impl Into<String>) -> Outcome {
        Outcome {
            command: command.into(),
            ..Outcome::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.reports.iter().all(CheckReport::passed)
    }

    /// 0 when every report passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub fn render(o: &Outcome, format: Format) -> String {
    match format {
        Format::Text => {
            let mut s = String::new();
            for r in &o.reports {
                let _ = write!(s, "{r}");
            }
            for r in &o.diagnostics {
                let _ = write!(s, "(diagnostic) {r}");
            }
            for n in &o.notes {
                let _ = writeln!(s, "note: {n}");
            }
            let _ = writeln!(
                s,
                "{}: {}",
                o.command,
                if o.passed() { "PASS" } else { "FAIL" }
            );
            s
        }
        Format::Json => {
            let v = json!({
                "command": o.command,
                "result": if o.passed() { "pass" } else { "fail" },
                "notes": o.notes,
                "reports": o.reports.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
                "diagnostics": o.diagnostics.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
            });
            let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

/// A failed precondition becomes a failing report; anything else is an
/// input error.
enum Failure {
    Report(CheckReport),
    Input(CliError),
}

impl From<FinError> for Failure {
    fn from(e: FinError) -> Failure {
        match e {
            FinError::Precondition(r) => Failure::Report(*r),
            e => Failure::Input(CliError(e.to_string())),
        }
    }
}

impl From<ConfError> for Failure {
    fn from(e: ConfError) -> Failure {
        match e {
            ConfError::Precondition(r) => Failure::Report(*r),
            e => Failure::Input(CliError(e.to_string())),
        }
    }
}

impl From<BridgeError> for Failure {
    fn from(e: BridgeError) -> Failure {
        match e {
            BridgeError::Fin(e) => e.into(),
            BridgeError::Conf(e) => e.into(),
            BridgeError::Stage { report, .. } => Failure::Report(*report),
        }
    }
}

impl From<DeformError> for Failure {
    fn from(e: DeformError) -> Failure {
        match e {
            DeformError::Precondition { order, report } => {
                let mut r = *report;
                if let Some(o) = order {
                    r.note(format!("lowest failing order: h^{o}"));
                }
                Failure::Report(r)
            }
            DeformError::Conf(e) => e.into(),
            e => Failure::Input(CliError(e.to_string())),
        }
    }
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Failure {
        Failure::Input(e)
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError(e.to_string())
}

fn need<T>(x: Option<T>, what: &str) -> Result<T, CliError> {
    x.ok_or_else(|| CliError(format!("the spec file has no {what}")))
}

fn fin(spec: &SpecFile) -> Result<FinStructure, CliError> {
    need(spec.fin_structure()?, "`fin` section")
}

fn conf(spec: &SpecFile) -> Result<ConfAlgebra, CliError> {
    need(spec.conf_algebra()?, "`conf` section")
}

fn coalg(spec: &SpecFile) -> Result<ConfCoalgebra, CliError> {
    need(spec.conf_coalgebra()?, "`conf.coops`")
}

fn rmatrix(spec: &SpecFile) -> Result<Tensor, CliError> {
    need(spec.rmatrix()?, "`rmatrix` section")
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

/// Every kind name accepted by `check --kind`.
pub fn kind_names() -> Vec<&'static str> {
    let mut v: Vec<&str> = Vec::new();
    v.extend(StructureKind::ALL.iter().map(|k| k.as_str()));
    v.extend(CoKind::ALL.iter().map(|k| k.as_str()));
    v.extend(BiKind::ALL.iter().map(|k| k.as_str()));
    v.push("derivation");
    v.extend(ConfKind::ALL.iter().map(|k| k.as_str()));
    v.extend(ConfCoKind::ALL.iter().map(|k| k.as_str()));
    v.extend(ConfBiKind::ALL.iter().map(|k| k.as_str()));
    v.push("deformation");
    v
}

pub fn check(spec: &SpecFile, kind: &str) -> Result<Outcome, CliError> {
    let mut o = Outcome::new(format!("check {kind}"));
    let rep = if let Ok(k) = kind.parse::<StructureKind>() {
        findim::check_fin_structure(k, &fin(spec)?).map_err(input)?
    } else if let Ok(k) = kind.parse::<CoKind>() {
        findim::check_fin_coalgebra(k, &fin(spec)?).map_err(input)?
    } else if let Ok(k) = kind.parse::<BiKind>() {
        findim::check_fin_bialgebra(k, &fin(spec)?).map_err(input)?
    } else if kind == "derivation" {
        let a = fin(spec)?;
        let dm = need(a.linmaps.get("D").cloned(), "linear map `D`")?;
        let mut rep = CheckReport::new("derivation");
        for op in a.ops.keys() {
            let mut r = findim::check_derivation(&a, op, &dm).map_err(input)?;
            r.identities
                .iter_mut()
                .for_each(|i| i.id = format!("{op}: {}", i.id));
            rep.merge(r);
        }
        rep
    } else if let Ok(k) = kind.parse::<ConfKind>() {
        check_conf_structure(k, &conf(spec)?).map_err(input)?
    } else if let Ok(k) = kind.parse::<ConfCoKind>() {
        check_conf_coalgebra(k, &coalg(spec)?).map_err(input)?
    } else if let Ok(k) = kind.parse::<ConfBiKind>() {
        check_conf_bialgebra(k, &conf(spec)?, &coalg(spec)?).map_err(input)?
    } else if kind == "deformation" {
        let (d, c) = need(spec.deformation()?, "`deform` section")?;
        deform::check_deformation_hypotheses(&d, &c).map_err(input)?
    } else {
        return Err(CliError(format!(
            "unknown kind `{kind}`; expected one of: {}",
            kind_names().join(", ")
        )));
    };
    o.reports.push(rep);
    Ok(o)
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

pub const PIPELINES: [&str; 10] = [
    "zinbiel-to-pre-pgd",
    "associated-pgd",
    "pgd-to-conformal",
    "pre-pgd-to-pre-poisson-conformal",
    "pgd-bialgebra-to-conformal",
    "associated-poisson-conformal",
    "canonical-pcybe",
    "coboundary",
    "double",
    "semiclassical-limit",
];

/// Run a construction. With `unchecked` the hypothesis check is skipped;
/// otherwise a failing hypothesis yields its report and no output.
pub fn construct(pipeline: &str, spec: &SpecFile, unchecked: bool) -> Result<Outcome, CliError> {
    let mut o = Outcome::new(format!("construct {pipeline}"));
    match construct_inner(pipeline, spec, unchecked, &mut o) {
        Ok(out) => {
            o.output = Some(out);
            Ok(o)
        }
        Err(Failure::Report(r)) => {
            o.reports.push(r);
            Ok(o)
        }
        Err(Failure::Input(e)) => Err(e),
    }
}

fn derived(spec: &SpecFile, pipeline: &str) -> SpecFile {
    let name = spec.name.clone().unwrap_or_else(|| "input".into());
    SpecFile::named(
        &format!("{name}/{pipeline}"),
        &format!("{pipeline} of {name}"),
    )
}

fn construct_inner(
    pipeline: &str,
    spec: &SpecFile,
    unchecked: bool,
    o: &mut Outcome,
) -> Result<SpecFile, Failure> {
    let mut out = derived(spec, pipeline);
    match pipeline {
        "zinbiel-to-pre-pgd" => {
            let a = fin(spec)?;
            let dm = need(a.linmaps.get("D").cloned(), "linear map `D`")?;
            let p = if unchecked {
                findim::pre_pgd_from_zinbiel(&a, &dm)?
            } else {
                findim::zinbiel_derivation_to_pre_pgd(&a, &dm)?
            };
            out.set_fin(&p);
        }
        "associated-pgd" => {
            let a = fin(spec)?;
            let p = if unchecked {
                findim::associated_pgd(&a)?
            } else {
                findim::associated_pgd_of_pre_pgd(&a)?
            };
            out.set_fin(&p);
        }
        "pgd-to-conformal" => {
            let a = fin(spec)?;
            let c = if unchecked {
                bridges::pgd_to_conformal_unchecked(&a)?
            } else {
                bridges::pgd_to_conformal(&a)?
            };
            out.set_conf(&c, None);
        }
        "pre-pgd-to-pre-poisson-conformal" => {
            let a = fin(spec)?;
            let c = if unchecked {
                bridges::pre_pgd_to_pre_poisson_conformal_unchecked(&a)?
            } else {
                bridges::pre_pgd_to_pre_poisson_conformal(&a)?
            };
            out.set_conf(&c, None);
        }
        "pgd-bialgebra-to-conformal" => {
            let a = fin(spec)?;
            let (c, co) = if unchecked {
                bridges::pgd_bialgebra_to_conf_bialgebra_unchecked(&a)?
            } else {
                bridges::pgd_bialgebra_to_conf_bialgebra(&a)?
            };
            out.set_conf(&c, Some(&co));
        }
        "associated-poisson-conformal" => {
            let a = conf(spec)?;
            let c = if unchecked {
                ybe::associated_poisson_conformal_unchecked(&a)?
            } else {
                ybe::associated_poisson_conformal(&a)?
            };
            out.set_conf(&c, None);
        }
        "canonical-pcybe" => {
            let a = conf(spec)?;
            let (hat, r) = if unchecked {
                ybe::canonical_pcybe_solution_unchecked(&a)?
            } else {
                ybe::canonical_pcybe_solution(&a)?
            };
            out.set_conf(&hat, None);
            out.set_rmatrix(&r);
        }
        "coboundary" => {
            let a = conf(spec)?;
            let r = rmatrix(spec)?;
            if !unchecked {
                let mut rep = ybe::check_pcybe(&a, &r)?;
                rep.merge(ybe::check_coboundary_conditions(&a, &r)?);
                rep.title = "coboundary-hypotheses".into();
                if !rep.passed() {
                    return Err(Failure::Report(rep));
                }
            }
            let co = ybe::coboundary_coproducts(&a, &r)?;
            out.set_conf(&a, Some(&co));
            out.set_rmatrix(&r);
        }
        "double" => {
            let a = conf(spec)?;
            let c = coalg(spec)?;
            let (d, r) = if unchecked {
                conformal::bialgebra_double_unchecked(&a, &c)?
            } else {
                conformal::bialgebra_double(&a, &c)?
            };
            out.set_conf(&d, None);
            out.set_rmatrix(&r);
        }
        "semiclassical-limit" => {
            let (d, c) = need(spec.deformation()?, "`deform` section")?;
            let (alg, co, rep) = if unchecked {
                deform::semiclassical_limit_unchecked(&d, &c)?
            } else {
                deform::semiclassical_limit(&d, &c)?
            };
            o.reports.push(rep);
            out.set_conf(&alg, Some(&co));
        }
        _ => {
            return Err(Failure::Input(CliError(format!(
                "unknown pipeline `{pipeline}`; expected one of: {}",
                PIPELINES.join(", ")
            ))))
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// ybe
// ---------------------------------------------------------------------------

/// PCYBE and the coboundary conditions of `rmatrix` on `conf`. For a skew
/// `r` the O-operator form of the equation is evaluated as an independent
/// cross-check and its verdict compared with the direct one.
pub fn ybe(spec: &SpecFile) -> Result<Outcome, CliError> {
    let a = conf(spec)?;
    let r = rmatrix(spec)?;
    let mut o = Outcome::new("ybe");
    let pcybe = ybe::check_pcybe(&a, &r).map_err(input)?;
    o.reports
        .push(ybe::check_coboundary_conditions(&a, &r).map_err(input)?);
    if ybe::is_skew(&r) {
        o.notes.push("r is skew-symmetric".into());
        let rep = conformal::dual_representation_unchecked(&ConfRep::adjoint(&a));
        let oo =
            ybe::o_operator_identities(&a, &rep, &ybe::r_to_conformal_map(&r)).map_err(input)?;
        if oo.passed() == pcybe.passed() {
            o.notes.push("O-operator form agrees with PCYBE".into());
        } else {
            o.notes.push("O-operator form disagrees with PCYBE".into());
        }
        o.diagnostics.push(oo);
    } else {
        o.notes.push("r is not skew-symmetric".into());
    }
    o.reports.insert(0, pcybe);
    Ok(o)
}

// ---------------------------------------------------------------------------
// examples
// ---------------------------------------------------------------------------

/// Parse `sym` (the symbolic parameter) or an exact rational.
pub fn parse_value(src: &str, symbol: Poly) -> Result<Poly, CliError> {
    if src == "sym" {
        return Ok(symbol);
    }
    let p = Poly::parse(src, &[]).map_err(|e| CliError(format!("value `{src}`: {e}")))?;
    if !p.is_constant() {
        return Err(CliError(format!("value `{src}` is not a rational number")));
    }
    Ok(p)
}

/// The final example through the whole pipeline. For the published data
/// the status is decided by the comparison with the published tables and
/// the stage checks are diagnostics, unless `strict`; for the corrected
/// data the stage checks decide.
pub fn example_final(
    alpha: &Poly,
    variant: FinalVariant,
    strict: bool,
) -> Result<Outcome, CliError> {
    let mut o = Outcome::new(format!("example {variant}"));
    let (z, d) = examples::final_example(alpha, variant);
    let b = bridges::run_pipeline(&z, &d, false).map_err(input)?;
    let stages: Vec<CheckReport> = b.stages.iter().map(|s| s.report.clone()).collect();
    match variant {
        FinalVariant::Published => {
            o.reports.push(examples::final_displays(&b, alpha));
            let failing: Vec<&str> = b
                .stages
                .iter()
                .filter(|s| !s.report.passed())
                .map(|s| s.id.as_str())
                .collect();
            if !failing.is_empty() {
                o.notes.push(format!(
                    "stage checks failing on the published data: {}",
                    failing.join(", ")
                ));
            }
            if strict {
                o.reports.extend(stages);
            } else {
                o.diagnostics.extend(stages);
            }
        }
        FinalVariant::Corrected => o.reports.extend(stages),
    }
    let mut out = SpecFile::named(
        &format!("{variant}/hat"),
        "the semidirect product with its r-matrix and coboundary coproducts",
    );
    out.set_conf(&b.hat, Some(&b.coalgebra));
    out.set_rmatrix(&b.r);
    o.output = Some(out);
    Ok(o)
}

/// The polynomial example truncated at `degree`: the differential
/// Novikov-Poisson bialgebra checks on the window and the comparison of the
/// induced conformal bialgebra with the published formulas.
pub fn example_polyx(q: &Poly, degree: usize) -> Result<Outcome, CliError> {
    if degree < 2 {
        return Err(CliError("degree must be at least 2".into()));
    }
    let mut o = Outcome::new("example polyx");
    let a = examples::polyx(q, degree);
    o.reports
        .push(findim::check_fin_structure(StructureKind::DiffNovikovPoisson, &a).map_err(input)?);
    o.reports
        .push(findim::check_fin_coalgebra(CoKind::DiffNPCo, &a).map_err(input)?);
    o.reports
        .push(findim::check_fin_bialgebra(BiKind::DiffNPBi, &a).map_err(input)?);
    let (ca, cc) = bridges::pgd_bialgebra_to_conf_bialgebra_unchecked(&a).map_err(input)?;
    o.reports
        .push(examples::polyx_displays(&ca, &cc, q, degree));
    o.notes.push(format!(
        "identities evaluated on x^0..x^{degree}; products land in x^0..x^{}",
        3 * degree
    ));
    let mut out = SpecFile::named(
        &format!("polyx/{degree}"),
        "the truncated polynomial differential Novikov-Poisson bialgebra",
    );
    out.set_fin(&a);
    o.output = Some(out);
    Ok(o)
}

// ---------------------------------------------------------------------------
// deform
// ---------------------------------------------------------------------------

pub fn deform_limit(spec: &SpecFile, unchecked: bool) -> Result<Outcome, CliError> {
    construct("semiclassical-limit", spec, unchecked).map(|mut o| {
        o.command = "deform limit".into();
        o
    })
}

/// A builtin spec by name.
pub fn builtin(name: &str) -> Result<SpecFile, CliError> {
    builtins::spec(name).ok_or_else(|| {
        CliError(format!(
            "unknown builtin `{name}`; expected one of: {}",
            builtins::NAMES.join(", ")
        ))
    })
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Failure {
        Failure::Input(e.into())
    }
}
