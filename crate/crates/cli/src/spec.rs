//! The JSON spec-file format read and written by the command line.
//!
//! A spec file holds up to four sections. Every coefficient is a
//! polynomial string and every index is 1-based.
//!
//! * `fin`: a finite-dimensional structure with `dim`, optional `window`,
//!   and sparse `ops` (`[i, j, k, c]` for `e_i op e_j ∋ c e_k`), `coops`
//!   (`[k, i, j, c]` for `Δ(e_k) ∋ c e_i ⊗ e_j`) and `linmaps`
//!   (`[i, j, c]` for `D(e_i) ∋ c e_j`). Coefficients are constants.
//! * `conf`: a conformal algebra and coalgebra of `rank`, with `ops`
//!   entries in `d, l` and `coops` entries in `d1, d2`.
//! * `rmatrix`: `[i, j, c]` for `c(∂₁, ∂₂) e_i ⊗ e_j`, over `conf.rank`.
//! * `deform`: `order` and the corrections `{·}_k`, `Δ_k` for
//!   `k = 1..order−1`; the base product and coproduct are `conf.ops.mul`
//!   and `conf.coops.Delta`.
//!
//! Free parameters used by coefficients are declared in `params`.
//! Serialization is canonical, so a file written by this module is read
//! back and rewritten byte for byte.

use confalg::conformal::{ConfAlgebra, ConfCoalgebra, Table};
use confalg::deform::{TruncatedCoDeformation, TruncatedDeformation};
use confalg::exactpoly::{Poly, Var};
use confalg::findim::FinStructure;
use confalg::tensor::Tensor;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// `[i, j, k, coefficient]`.
pub type Entry3 = (usize, usize, usize, String);
/// `[i, j, coefficient]`.
pub type Entry2 = (usize, usize, String);

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fin: Option<FinSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conf: Option<ConfSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rmatrix: Option<Vec<Entry2>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deform: Option<DeformSection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinSection {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ops: BTreeMap<String, Vec<Entry3>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coops: BTreeMap<String, Vec<Entry3>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub linmaps: BTreeMap<String, Vec<Entry2>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfSection {
    pub rank: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ops: BTreeMap<String, Vec<Entry3>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coops: BTreeMap<String, Vec<Entry3>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformSection {
    pub order: usize,
    #[serde(default)]
    pub corrections: Vec<Vec<Entry3>>,
    #[serde(default)]
    pub cocorrections: Vec<Vec<Entry3>>,
}

/// A spec-file error with the location it refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError {
    pub location: String,
    pub message: String,
}

impl SpecError {
    fn new(location: impl Into<String>, message: impl Into<String>) -> SpecError {
        SpecError {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.location.is_empty() {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.location, self.message)
        }
    }
}

impl std::error::Error for SpecError {}

/// Which variables a coefficient may contain besides parameters.
#[derive(Copy, Clone)]
enum Vars {
    Constant,
    Product,
    Coproduct,
}

impl Vars {
    fn allowed(self) -> &'static [Var] {
        match self {
            Vars::Constant => &[],
            Vars::Product => &[Var::PARTIAL, Var::LAMBDA],
            Vars::Coproduct => &[Var::D1, Var::D2],
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Vars::Constant => "constants and parameters",
            Vars::Product => "`d`, `l` and parameters",
            Vars::Coproduct => "`d1`, `d2` and parameters",
        }
    }
}

/// Parse spec-file text. Structural errors carry the JSON line and column.
pub fn parse_spec(src: &str) -> Result<SpecFile, SpecError> {
    if src.trim().is_empty() {
        return Err(SpecError::new("", "no sections"));
    }
    let spec: SpecFile = serde_json::from_str(src).map_err(|e| {
        SpecError::new(
            format!("line {}, column {}", e.line(), e.column()),
            strip_position(&e.to_string()),
        )
    })?;
    if spec.fin.is_none() && spec.conf.is_none() && spec.rmatrix.is_none() && spec.deform.is_none()
    {
        return Err(SpecError::new("", "no sections"));
    }
    let params: Vec<&str> = spec.params.iter().map(String::as_str).collect();
    for (i, p) in params.iter().enumerate() {
        Var::param(p).map_err(|e| SpecError::new(format!("params[{i}]"), e.to_string()))?;
    }
    // Parse everything once so that errors surface before any command runs.
    spec.fin_structure()?;
    spec.conf_algebra()?;
    spec.conf_coalgebra()?;
    spec.rmatrix()?;
    spec.deformation()?;
    Ok(spec)
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// Serialize canonically: two-space indentation, with arrays of scalars
/// (the sparse entries) kept on one line, and a trailing newline.
pub fn write_spec(spec: &SpecFile) -> String {
    let v = serde_json::to_value(spec).expect("spec files serialize");
    let mut s = String::new();
    write_value(&v, 0, &mut s);
    s.push('\n');
    s
}

fn write_value(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

impl SpecFile {
    fn param_names(&self) -> Vec<&str> {
        self.params.iter().map(String::as_str).collect()
    }

    fn poly(&self, loc: &str, src: &str, vars: Vars) -> Result<Poly, SpecError> {
        let p = Poly::parse(src, &self.param_names())
            .map_err(|e| SpecError::new(loc, e.to_string()))?;
        for v in p.vars() {
            if !v.is_param() && !vars.allowed().contains(&v) {
                return Err(SpecError::new(
                    loc,
                    format!("variable `{v}` not allowed; expected {}", vars.describe()),
                ));
            }
        }
        Ok(p)
    }

    fn index(loc: &str, i: usize, n: usize) -> Result<usize, SpecError> {
        if i == 0 || i > n {
            return Err(SpecError::new(
                loc,
                format!("index {i} out of range 1..={n}"),
            ));
        }
        Ok(i - 1)
    }

    fn tensor3(
        &self,
        loc: &str,
        n: usize,
        entries: &[Entry3],
        vars: Vars,
    ) -> Result<Tensor, SpecError> {
        let mut t = Tensor::zeros(n, 3);
        for (e, (a, b, c, src)) in entries.iter().enumerate() {
            let l = format!("{loc}[{e}]");
            let ix = [
                Self::index(&l, *a, n)?,
                Self::index(&l, *b, n)?,
                Self::index(&l, *c, n)?,
            ];
            t.add_at(&ix, &self.poly(&l, src, vars)?);
        }
        Ok(t)
    }

    fn tensor2(
        &self,
        loc: &str,
        n: usize,
        entries: &[Entry2],
        vars: Vars,
    ) -> Result<Tensor, SpecError> {
        let mut t = Tensor::zeros(n, 2);
        for (e, (a, b, src)) in entries.iter().enumerate() {
            let l = format!("{loc}[{e}]");
            let ix = [Self::index(&l, *a, n)?, Self::index(&l, *b, n)?];
            t.add_at(&ix, &self.poly(&l, src, vars)?);
        }
        Ok(t)
    }

    fn table(&self, loc: &str, n: usize, entries: &[Entry3]) -> Result<Table, SpecError> {
        let t = self.tensor3(loc, n, entries, Vars::Product)?;
        let mut out = Table::square(n);
        for (ix, p) in t.nonzero() {
            out.add_at(ix[0], ix[1], ix[2], &p);
        }
        Ok(out)
    }

    pub fn fin_structure(&self) -> Result<Option<FinStructure>, SpecError> {
        let Some(f) = &self.fin else { return Ok(None) };
        let mut a = FinStructure::new(f.dim);
        a.window = f.window;
        for (name, es) in &f.ops {
            let t = self.tensor3(&format!("fin.ops.{name}"), f.dim, es, Vars::Constant)?;
            a.ops.insert(name.clone(), t);
        }
        for (name, es) in &f.coops {
            let t = self.tensor3(&format!("fin.coops.{name}"), f.dim, es, Vars::Constant)?;
            a.coops.insert(name.clone(), t);
        }
        for (name, es) in &f.linmaps {
            let t = self.tensor2(&format!("fin.linmaps.{name}"), f.dim, es, Vars::Constant)?;
            a.linmaps.insert(name.clone(), t);
        }
        a.validate()
            .map_err(|e| SpecError::new("fin", e.to_string()))?;
        Ok(Some(a))
    }

    pub fn conf_algebra(&self) -> Result<Option<ConfAlgebra>, SpecError> {
        let Some(c) = &self.conf else { return Ok(None) };
        let mut a = ConfAlgebra::new(c.rank);
        for (name, es) in &c.ops {
            a.ops.insert(
                name.clone(),
                self.table(&format!("conf.ops.{name}"), c.rank, es)?,
            );
        }
        a.validate()
            .map_err(|e| SpecError::new("conf", e.to_string()))?;
        Ok(Some(a))
    }

    /// The coalgebra part of `conf`, if it declares any coproduct.
    pub fn conf_coalgebra(&self) -> Result<Option<ConfCoalgebra>, SpecError> {
        let Some(c) = &self.conf else { return Ok(None) };
        if c.coops.is_empty() {
            return Ok(None);
        }
        let mut co = ConfCoalgebra::new(c.rank);
        for (name, es) in &c.coops {
            let t = self.tensor3(&format!("conf.coops.{name}"), c.rank, es, Vars::Coproduct)?;
            co.coops.insert(name.clone(), t);
        }
        co.validate()
            .map_err(|e| SpecError::new("conf", e.to_string()))?;
        Ok(Some(co))
    }

    pub fn rmatrix(&self) -> Result<Option<Tensor>, SpecError> {
        let Some(es) = &self.rmatrix else {
            return Ok(None);
        };
        let Some(c) = &self.conf else {
            return Err(SpecError::new("rmatrix", "requires a `conf` section"));
        };
        Ok(Some(self.tensor2(
            "rmatrix",
            c.rank,
            es,
            Vars::Coproduct,
        )?))
    }

    pub fn deformation(
        &self,
    ) -> Result<Option<(TruncatedDeformation, TruncatedCoDeformation)>, SpecError> {
        let Some(d) = &self.deform else {
            return Ok(None);
        };
        let Some(base) = self.conf_algebra()? else {
            return Err(SpecError::new("deform", "requires a `conf` section"));
        };
        let n = base.rank;
        let mut base_alg = ConfAlgebra::new(n);
        match base.ops.get("mul") {
            Some(t) => base_alg.ops.insert("mul".into(), t.clone()),
            None => return Err(SpecError::new("deform", "requires `conf.ops.mul`")),
        };
        let mut base_co = ConfCoalgebra::new(n);
        match self
            .conf_coalgebra()?
            .and_then(|c| c.coops.get("Delta").cloned())
        {
            Some(t) => base_co.coops.insert("Delta".into(), t),
            None => base_co.coops.insert("Delta".into(), Tensor::zeros(n, 3)),
        };
        let want = d.order.saturating_sub(1);
        for (what, len) in [
            ("corrections", d.corrections.len()),
            ("cocorrections", d.cocorrections.len()),
        ] {
            if len > want {
                return Err(SpecError::new(
                    format!("deform.{what}"),
                    format!("at most {want} entries for order {}, got {len}", d.order),
                ));
            }
        }
        let mut alg = TruncatedDeformation::trivial(base_alg, d.order);
        for (k, es) in d.corrections.iter().enumerate() {
            alg.corrections[k] = self.table(&format!("deform.corrections[{k}]"), n, es)?;
        }
        let mut co = TruncatedCoDeformation::trivial(base_co, d.order);
        for (k, es) in d.cocorrections.iter().enumerate() {
            co.corrections[k] = self.tensor3(
                &format!("deform.cocorrections[{k}]"),
                n,
                es,
                Vars::Coproduct,
            )?;
        }
        Ok(Some((alg, co)))
    }

    /// A spec with only a name and description. Sections are added with
    /// the `set_*` methods, which also declare the parameters they use.
    pub fn named(name: &str, description: &str) -> SpecFile {
        SpecFile {
            name: Some(name.into()),
            description: Some(description.into()),
            ..SpecFile::default()
        }
    }

    pub fn set_fin(&mut self, a: &FinStructure) {
        self.declare(
            a.ops
                .values()
                .chain(a.coops.values())
                .chain(a.linmaps.values())
                .flat_map(|t| t.nonzero().into_iter().map(|e| e.1)),
        );
        let map3 = |m: &BTreeMap<String, Tensor>| {
            m.iter()
                .map(|(k, t)| (k.clone(), entries3(t)))
                .collect::<BTreeMap<_, _>>()
        };
        self.fin = Some(FinSection {
            dim: a.dim,
            window: a.window,
            ops: map3(&a.ops),
            coops: map3(&a.coops),
            linmaps: a
                .linmaps
                .iter()
                .map(|(k, t)| (k.clone(), entries2(t)))
                .collect(),
        });
    }

    pub fn set_conf(&mut self, a: &ConfAlgebra, c: Option<&ConfCoalgebra>) {
        self.declare(
            a.ops
                .values()
                .flat_map(|t| t.nonzero().into_iter().map(|e| e.1)),
        );
        if let Some(c) = c {
            self.declare(
                c.coops
                    .values()
                    .flat_map(|t| t.nonzero().into_iter().map(|e| e.1)),
            );
        }
        self.conf = Some(ConfSection {
            rank: a.rank,
            ops: a
                .ops
                .iter()
                .map(|(k, t)| (k.clone(), table_entries(t)))
                .collect(),
            coops: c
                .map(|c| {
                    c.coops
                        .iter()
                        .map(|(k, t)| (k.clone(), entries3(t)))
                        .collect()
                })
                .unwrap_or_default(),
        });
    }

    pub fn set_rmatrix(&mut self, r: &Tensor) {
        self.declare(r.nonzero().into_iter().map(|e| e.1));
        self.rmatrix = Some(entries2(r));
    }

    /// Store a deformation; the base goes to `conf` (`mul`, `Delta`).
    pub fn set_deform(&mut self, d: &TruncatedDeformation, c: &TruncatedCoDeformation) {
        self.set_conf(&d.base, Some(&c.base));
        self.declare(
            d.corrections
                .iter()
                .flat_map(|t| t.nonzero().into_iter().map(|e| e.1)),
        );
        self.declare(
            c.corrections
                .iter()
                .flat_map(|t| t.nonzero().into_iter().map(|e| e.1)),
        );
        self.deform = Some(DeformSection {
            order: d.order,
            corrections: d.corrections.iter().map(table_entries).collect(),
            cocorrections: c.corrections.iter().map(entries3).collect(),
        });
    }
}

impl SpecFile {
    fn declare(&mut self, polys: impl IntoIterator<Item = Poly>) {
        let mut names: BTreeSet<String> = self.params.drain(..).collect();
        for p in polys {
            names.extend(
                p.vars()
                    .into_iter()
                    .filter(|v| v.is_param())
                    .map(|v| v.name()),
            );
        }
        self.params = names.into_iter().collect();
    }
}

fn entries3(t: &Tensor) -> Vec<Entry3> {
    t.nonzero()
        .into_iter()
        .map(|(ix, p)| (ix[0] + 1, ix[1] + 1, ix[2] + 1, p.serialize()))
        .collect()
}

fn entries2(t: &Tensor) -> Vec<Entry2> {
    t.nonzero()
        .into_iter()
        .map(|(ix, p)| (ix[0] + 1, ix[1] + 1, p.serialize()))
        .collect()
}

fn table_entries(t: &Table) -> Vec<Entry3> {
    t.nonzero()
        .into_iter()
        .map(|((i, j, k), p)| (i + 1, j + 1, k + 1, p.serialize()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use confalg::examples::{alpha_symbol, final_example, FinalVariant};

    #[test]
    fn structures_survive_a_write_and_parse() {
        let (z, _) = final_example(&alpha_symbol(), FinalVariant::Published);
        let mut a = ConfAlgebra::new(2);
        a.add("bracket", 0, 1, 1, Poly::parse("d - 3/2*l", &[]).unwrap());
        a.zero_op("mul");
        let mut s = SpecFile::named("t", "test");
        s.set_fin(&z);
        s.set_conf(&a, None);
        assert_eq!(s.params, ["alpha"]);
        let back = parse_spec(&write_spec(&s)).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.fin_structure().unwrap().unwrap(), z);
        assert_eq!(back.conf_algebra().unwrap().unwrap(), a);
        assert!(back.conf_coalgebra().unwrap().is_none());
    }

    #[test]
    fn undeclared_parameters_are_rejected() {
        let src = r#"{"conf": {"rank": 1, "ops": {"mul": [[1, 1, 1, "alpha"]]}}}"#;
        let e = parse_spec(src).unwrap_err();
        assert_eq!(e.location, "conf.ops.mul[0]");
        let ok =
            r#"{"params": ["alpha"], "conf": {"rank": 1, "ops": {"mul": [[1, 1, 1, "alpha"]]}}}"#;
        assert!(parse_spec(ok).is_ok());
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let e = parse_spec("{\n  \"conf\": [\n}").unwrap_err();
        assert!(e.location.starts_with("line 3, column"), "{e}");
    }

    #[test]
    fn scalar_arrays_stay_on_one_line() {
        let v: Value = serde_json::from_str(r#"{"a": [[1, 2, "x"]], "b": {}}"#).unwrap();
        let mut s = String::new();
        write_value(&v, 0, &mut s);
        assert_eq!(s, "{\n  \"a\": [\n    [1, 2, \"x\"]\n  ],\n  \"b\": {}\n}");
    }
}
