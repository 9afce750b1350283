//! Check reports: per-identity verdicts with residual witnesses.

use crate::exactpoly::Poly;
use serde_json::{json, Value};
use std::fmt;

/// Number of witnesses retained per identity; the failure count is always
/// exact.
pub const WITNESS_CAP: usize = 8;

/// A failing instance of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Basis indices of the arguments (0-based).
    pub args: Vec<usize>,
    /// Nonzero components of the residual, keyed by output indices.
    pub residual: Vec<(Vec<usize>, Poly)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityResult {
    pub id: String,
    pub instances: usize,
    pub failures: usize,
    pub witnesses: Vec<Witness>,
}

impl IdentityResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub title: String,
    pub identities: Vec<IdentityResult>,
    /// Identities evaluated for information only; they never affect the
    /// verdict.
    pub diagnostics: Vec<IdentityResult>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(title: impl Into<String>) -> CheckReport {
        CheckReport {
            title: title.into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.identities.iter().all(|r| r.passed())
    }

    pub fn push(&mut self, r: IdentityResult) {
        if !self.identities.iter().any(|x| x.id == r.id) {
            self.identities.push(r);
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        for r in other.identities {
            self.push(r);
        }
        for r in other.diagnostics {
            if !self.diagnostics.iter().any(|x| x.id == r.id) {
                self.diagnostics.push(r);
            }
        }
        for n in other.notes {
            if !self.notes.contains(&n) {
                self.notes.push(n);
            }
        }
    }

    pub fn note(&mut self, n: impl Into<String>) {
        let n = n.into();
        if !self.notes.contains(&n) {
            self.notes.push(n);
        }
    }

    pub fn get(&self, id: &str) -> Option<&IdentityResult> {
        self.identities.iter().find(|r| r.id == id)
    }

    /// Ids of the failed identities, in evaluation order.
    pub fn failed_ids(&self) -> Vec<&str> {
        self.identities
            .iter()
            .filter(|r| !r.passed())
            .map(|r| r.id.as_str())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "title": self.title,
            "verdict": if self.passed() { "pass" } else { "fail" },
            "notes": self.notes,
            "identities": self.identities.iter().map(identity_json).collect::<Vec<_>>(),
            "diagnostics": self.diagnostics.iter().map(identity_json).collect::<Vec<_>>(),
        })
    }
}

fn identity_json(r: &IdentityResult) -> Value {
    json!({
        "id": r.id,
        "verdict": if r.passed() { "pass" } else { "fail" },
        "instances": r.instances,
        "failures": r.failures,
        "witnesses": r.witnesses.iter().map(|w| json!({
            "args": w.args.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "residual": w.residual.iter().map(|(ix, p)| json!({
                "index": ix.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "value": p.to_string(),
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}",
            self.title,
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        for (tag, list) in [("", &self.identities), ("diagnostic ", &self.diagnostics)] {
            for r in list.iter() {
                writeln!(
                    f,
                    "  [{}] {tag}{} ({} instances, {} failing)",
                    if r.passed() { "pass" } else { "FAIL" },
                    r.id,
                    r.instances,
                    r.failures
                )?;
                for w in &r.witnesses {
                    let args: Vec<String> = w.args.iter().map(|i| (i + 1).to_string()).collect();
                    writeln!(f, "      at ({}):", args.join(","))?;
                    for (ix, p) in &w.residual {
                        let ix: Vec<String> = ix.iter().map(|i| (i + 1).to_string()).collect();
                        writeln!(f, "        [{}] {}", ix.join(","), p)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Evaluate `residual` on every argument tuple and collect failures.
pub fn run_identity<F>(id: &str, tuples: &[Vec<usize>], residual: F) -> IdentityResult
where
    F: Fn(&[usize]) -> Vec<(Vec<usize>, Poly)> + Sync + Send,
{
    let results = crate::par::map(tuples, |t| residual(t));
    let mut failures = 0;
    let mut witnesses = Vec::new();
    for (t, r) in tuples.iter().zip(results) {
        if !r.is_empty() {
            failures += 1;
            if witnesses.len() < WITNESS_CAP {
                witnesses.push(Witness {
                    args: t.clone(),
                    residual: r,
                });
            }
        }
    }
    IdentityResult {
        id: id.to_string(),
        instances: tuples.len(),
        failures,
        witnesses,
    }
}

/// All tuples of length `arity` over `0..n`, lexicographic.
pub fn tuples(n: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..arity {
        let mut next = Vec::with_capacity(out.len() * n);
        for t in &out {
            for i in 0..n {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// All tuples `t` with `t[s] < dims[s]`, lexicographic.
pub fn tuples_of(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &n in dims {
        let mut next = Vec::with_capacity(out.len() * n);
        for t in &out {
            for i in 0..n {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

pub(crate) type Residual<'a> = Box<dyn Fn(&[usize]) -> Vec<(Vec<usize>, Poly)> + Sync + Send + 'a>;

/// A named identity together with the argument ranges it is evaluated on.
pub(crate) struct Ident<'a> {
    pub id: String,
    pub arity: usize,
    /// Per-argument ranges; when absent every argument ranges over the
    /// `n_args` of [`run_all`].
    pub dims: Option<Vec<usize>>,
    pub f: Residual<'a>,
}

pub(crate) fn ident<'a>(
    id: impl Into<String>,
    arity: usize,
    f: impl Fn(&[usize]) -> Vec<(Vec<usize>, Poly)> + Sync + Send + 'a,
) -> Ident<'a> {
    Ident {
        id: id.into(),
        arity,
        dims: None,
        f: Box::new(f),
    }
}

pub(crate) fn ident_dims<'a>(
    id: impl Into<String>,
    dims: Vec<usize>,
    f: impl Fn(&[usize]) -> Vec<(Vec<usize>, Poly)> + Sync + Send + 'a,
) -> Ident<'a> {
    Ident {
        id: id.into(),
        arity: dims.len(),
        dims: Some(dims),
        f: Box::new(f),
    }
}

/// Run every identity once (the first occurrence of a repeated id wins).
pub(crate) fn run_all(title: &str, n_args: usize, ids: Vec<Ident<'_>>) -> CheckReport {
    let mut rep = CheckReport::new(title);
    let mut seen: Vec<String> = Vec::new();
    for id in ids {
        if seen.contains(&id.id) {
            continue;
        }
        seen.push(id.id.clone());
        let ts = match &id.dims {
            Some(d) => tuples_of(d),
            None => tuples(n_args, id.arity),
        };
        rep.push(run_identity(&id.id, &ts, |t| (id.f)(t)));
    }
    rep
}
