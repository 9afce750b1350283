//! Exact-rational sparse multivariate polynomials.
//!
//! The variable universe is fixed: the derivation `∂`, the spectral
//! parameters `λ, μ, ν`, the tensor-slot derivations `∂₁, ∂₂, ∂₃`, and a
//! process-wide table of named free parameters (`alpha`, `q`, ...).
//! Coefficients are [`BigRational`], so every identity check is exact.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors, which makes
//! equality structural. The textual form produced by [`Poly`]'s `Display`
//! is canonical: terms are listed in decreasing graded-lexicographic order
//! with variables compared in the order `∂, λ, μ, ν, ∂₁, ∂₂, ∂₃` followed by
//! parameters sorted by name, so serialized polynomials are stable across
//! runs regardless of the order in which parameters were first declared.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::LazyLock;
use std::sync::RwLock;
use thiserror::Error;

pub type Rational = BigRational;

/// Maximum number of distinct parameter names per process.
pub const MAX_PARAMS: usize = 16;
const NCORE: usize = 7;
const NVARS: usize = NCORE + MAX_PARAMS;

const CORE_NAMES: [&str; NCORE] = ["d", "l", "m", "n", "d1", "d2", "d3"];

static PARAMS: LazyLock<RwLock<Vec<String>>> = LazyLock::new(|| RwLock::new(Vec::new()));

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("too many distinct parameters (limit {MAX_PARAMS})")]
    TooManyParams,
    #[error("`{0}` is a reserved variable name and cannot be a parameter")]
    ReservedName(String),
    #[error("invalid parameter name `{0}`")]
    BadParamName(String),
    #[error("expression still contains `{0}`; expected only slot variables and parameters")]
    Unreduced(String),
    #[error("parse error at byte {pos} (`{token}`): {msg}")]
    Parse {
        pos: usize,
        token: String,
        msg: String,
    },
}

/// A polynomial variable.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(u8);

impl Var {
    pub const PARTIAL: Var = Var(0);
    pub const LAMBDA: Var = Var(1);
    pub const MU: Var = Var(2);
    pub const NU: Var = Var(3);
    pub const D1: Var = Var(4);
    pub const D2: Var = Var(5);
    pub const D3: Var = Var(6);

    /// Slot derivation `∂_s` for `s ∈ {1, 2, 3}`.
    pub fn slot(s: usize) -> Var {
        assert!((1..=3).contains(&s), "tensor slot out of range: {s}");
        Var(3 + s as u8)
    }

    /// Interns a parameter name, returning its variable.
    pub fn param(name: &str) -> Result<Var, PolyError> {
        if CORE_NAMES.contains(&name) {
            return Err(PolyError::ReservedName(name.to_string()));
        }
        let valid = name
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(PolyError::BadParamName(name.to_string()));
        }
        if let Some(i) = PARAMS.read().unwrap().iter().position(|p| p == name) {
            return Ok(Var((NCORE + i) as u8));
        }
        let mut table = PARAMS.write().unwrap();
        if let Some(i) = table.iter().position(|p| p == name) {
            return Ok(Var((NCORE + i) as u8));
        }
        if table.len() >= MAX_PARAMS {
            return Err(PolyError::TooManyParams);
        }
        table.push(name.to_string());
        Ok(Var((NCORE + table.len() - 1) as u8))
    }

    /// Looks up an already-interned parameter.
    pub fn lookup_param(name: &str) -> Option<Var> {
        PARAMS
            .read()
            .unwrap()
            .iter()
            .position(|p| p == name)
            .map(|i| Var((NCORE + i) as u8))
    }

    pub fn is_param(self) -> bool {
        self.0 as usize >= NCORE
    }

    pub fn is_slot(self) -> bool {
        (4..=6).contains(&self.0)
    }

    pub fn name(self) -> String {
        let i = self.0 as usize;
        if i < NCORE {
            CORE_NAMES[i].to_string()
        } else {
            PARAMS.read().unwrap()[i - NCORE].clone()
        }
    }

    fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Exponent vector over the full variable universe.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono([u16; NVARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; NVARS]);

    pub fn var(v: Var, e: u16) -> Mono {
        let mut m = Mono::ONE;
        m.0[v.index()] = e;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    fn with_exp(mut self, v: Var, e: u16) -> Mono {
        self.0[v.index()] = e;
        self
    }

    fn mul(&self, other: &Mono) -> Mono {
        let mut out = [0u16; NVARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i]
                .checked_add(other.0[i])
                .expect("exponent overflow in monomial product");
        }
        Mono(out)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u16)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Var(i as u8), e))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Rational>,
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::ONE, c);
        }
        Poly { terms }
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn rat(n: i64, d: i64) -> Poly {
        Poly::constant(rat(n, d))
    }

    pub fn var(v: Var) -> Poly {
        Poly::monomial(Rational::one(), Mono::var(v, 1))
    }

    pub fn monomial(c: Rational, m: Mono) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// `∂`
    pub fn d() -> Poly {
        Poly::var(Var::PARTIAL)
    }
    /// `λ`
    pub fn l() -> Poly {
        Poly::var(Var::LAMBDA)
    }
    /// `μ`
    pub fn m() -> Poly {
        Poly::var(Var::MU)
    }
    /// `ν`
    pub fn n() -> Poly {
        Poly::var(Var::NU)
    }
    /// `∂_s`
    pub fn slot(s: usize) -> Poly {
        Poly::var(Var::slot(s))
    }
    /// `∂₁ + … + ∂_k`, the derivation acting on a k-fold tensor.
    pub fn slot_sum(k: usize) -> Poly {
        (1..=k).fold(Poly::zero(), |acc, s| acc + Poly::slot(s))
    }
    pub fn param(name: &str) -> Result<Poly, PolyError> {
        Ok(Poly::var(Var::param(name)?))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Mono::ONE)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Mono::ONE)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// All variables occurring with positive exponent.
    pub fn vars(&self) -> Vec<Var> {
        let mut seen = [false; NVARS];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        (0..NVARS)
            .filter(|&i| seen[i])
            .map(|i| Var(i as u8))
            .collect()
    }

    fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replace every occurrence of `v` by `replacement` (single pass).
    pub fn substitute(&self, v: Var, replacement: &Poly) -> Poly {
        self.substitute_many(&[(v, replacement.clone())])
    }

    /// Simultaneous substitution of several variables.
    pub fn substitute_many(&self, subs: &[(Var, Poly)]) -> Poly {
        if subs.is_empty() || self.is_zero() {
            return self.clone();
        }
        let mut powers: Vec<Vec<Poly>> = subs.iter().map(|_| vec![Poly::one()]).collect();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut factor = Poly::one();
            for (si, (v, r)) in subs.iter().enumerate() {
                let e = m.exp(*v) as usize;
                if e == 0 {
                    continue;
                }
                rest = rest.with_exp(*v, 0);
                let cache = &mut powers[si];
                while cache.len() <= e {
                    let next = cache.last().unwrap() * r;
                    cache.push(next);
                }
                factor = &factor * &cache[e];
            }
            if factor.terms.len() == 1 && factor.terms.contains_key(&Mono::ONE) {
                let k = &factor.terms[&Mono::ONE] * c;
                out.add_term(rest, k);
            } else {
                for (fm, fc) in &factor.terms {
                    out.add_term(fm.mul(&rest), fc * c);
                }
            }
        }
        out
    }

    /// Rename variables simultaneously (a permutation or relabeling).
    pub fn rename(&self, map: &[(Var, Var)]) -> Poly {
        let subs: Vec<(Var, Poly)> = map.iter().map(|(f, t)| (*f, Poly::var(*t))).collect();
        self.substitute_many(&subs)
    }

    /// Coefficients with respect to `v`: `p = Σ_e coeff[e] · v^e`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Poly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            out[e].add_term(m.with_exp(v, 0), c.clone());
        }
        out
    }

    /// Membership in `(∂₁+∂₂+∂₃)·k[∂₁,∂₂,∂₃]`.
    pub fn divisible_by_slot_sum(&self) -> Result<bool, PolyError> {
        Ok(self.slot_sum_residue()?.is_zero())
    }

    /// The image of `p` under `∂₃ ↦ −∂₁−∂₂`; zero iff `p` is a multiple of
    /// `∂₁+∂₂+∂₃`.
    pub fn slot_sum_residue(&self) -> Result<Poly, PolyError> {
        for v in [Var::PARTIAL, Var::LAMBDA, Var::MU, Var::NU] {
            if self.contains_var(v) {
                return Err(PolyError::Unreduced(v.name()));
            }
        }
        Ok(self.substitute(Var::D3, &-(Poly::slot(1) + Poly::slot(2))))
    }

    /// Parse a polynomial; `params` lists the identifiers accepted as
    /// parameters.
    pub fn parse(src: &str, params: &[&str]) -> Result<Poly, PolyError> {
        Parser::new(src, params)?.parse_all()
    }

    /// Canonical serialization (identical to `Display`).
    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

pub fn poly_equal(p: &Poly, q: &Poly) -> bool {
    (p - q).is_zero()
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Variables in canonical print order: core variables, then parameters
/// ordered by name.
fn canonical_var_order() -> Vec<usize> {
    let table = PARAMS.read().unwrap();
    let mut params: Vec<usize> = (0..table.len()).collect();
    params.sort_by(|a, b| table[*a].cmp(&table[*b]));
    (0..NCORE)
        .chain(params.into_iter().map(|i| NCORE + i))
        .collect()
}

/// Terms of `p` in canonical order (decreasing graded lex).
pub fn canonical_terms(p: &Poly) -> Vec<(Mono, Rational)> {
    let order = canonical_var_order();
    let mut v: Vec<(Mono, Rational)> = p.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
    v.sort_by(|(a, _), (b, _)| {
        let ka: Vec<u16> = order.iter().map(|&i| a.0[i]).collect();
        let kb: Vec<u16> = order.iter().map(|&i| b.0[i]).collect();
        b.degree().cmp(&a.degree()).then_with(|| kb.cmp(&ka))
    });
    v
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let order = canonical_var_order();
        let mut out = String::new();
        for (idx, (m, c)) in canonical_terms(self).iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for &i in &order {
                let e = m.0[i];
                if e == 0 {
                    continue;
                }
                let name = Var(i as u8).name();
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            if factors.is_empty() {
                out.push_str(&fmt_rational(&a));
            } else {
                if !a.is_one() {
                    out.push_str(&fmt_rational(&a));
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        f.write_str(&out)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += rhs;
        self
    }
}

impl AddAssign for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl SubAssign for Poly {
    fn sub_assign(&mut self, rhs: Poly) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Mul<&Poly> for Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        &self * rhs
    }
}

impl Mul<Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        self * &rhs
    }
}

impl Add<&Poly> for Poly {
    type Output = Poly;
    fn add(mut self, rhs: &Poly) -> Poly {
        self += rhs;
        self
    }
}

impl Sub<&Poly> for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: &Poly) -> Poly {
        self -= rhs;
        self
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Poly {
        Poly::int(n)
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Poly {
        Poly::constant(c)
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Parser {
    toks: Vec<(Tok, usize, String)>,
    pos: usize,
    params: Vec<(String, Var)>,
}

fn perr(pos: usize, token: &str, msg: &str) -> PolyError {
    PolyError::Parse {
        pos,
        token: token.to_string(),
        msg: msg.to_string(),
    }
}

impl Parser {
    fn new(src: &str, params: &[&str]) -> Result<Parser, PolyError> {
        let mut toks = Vec::new();
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                let text = &src[start..i];
                toks.push((Tok::Num(text.parse().unwrap()), start, text.to_string()));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let text = &src[start..i];
                toks.push((Tok::Ident(text.to_string()), start, text.to_string()));
            } else if "+-*^()/".contains(c) {
                toks.push((Tok::Sym(c), i, c.to_string()));
                i += 1;
            } else {
                let ch = src[i..].chars().next().unwrap();
                return Err(perr(i, &ch.to_string(), "unexpected character"));
            }
        }
        toks.push((Tok::End, src.len(), "<end>".to_string()));
        let mut ps = Vec::new();
        for p in params {
            ps.push((p.to_string(), Var::param(p)?));
        }
        Ok(Parser {
            toks,
            pos: 0,
            params: ps,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> (usize, String) {
        let (_, p, t) = &self.toks[self.pos];
        (*p, t.clone())
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn parse_all(mut self) -> Result<Poly, PolyError> {
        if matches!(self.peek(), Tok::End) {
            let (p, t) = self.here();
            return Err(perr(p, &t, "empty expression"));
        }
        let e = self.expr()?;
        if !matches!(self.peek(), Tok::End) {
            let (p, t) = self.here();
            return Err(perr(p, &t, "unexpected token"));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    acc += self.term()?;
                }
                Tok::Sym('-') => {
                    self.bump();
                    acc -= self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Tok::Sym('*')) {
            self.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, PolyError> {
        match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                Ok(-self.factor()?)
            }
            Tok::Sym('+') => {
                self.bump();
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if matches!(self.peek(), Tok::Sym('^')) {
                    self.bump();
                    let (p, t) = self.here();
                    match self.bump() {
                        Tok::Num(n) => {
                            let e: u32 = n
                                .try_into()
                                .map_err(|_| perr(p, &t, "exponent too large"))?;
                            Ok(base.pow(e))
                        }
                        _ => Err(perr(p, &t, "expected a non-negative integer exponent")),
                    }
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        let (p, t) = self.here();
        match self.bump() {
            Tok::Num(n) => {
                if matches!(self.peek(), Tok::Sym('/')) {
                    self.bump();
                    let (dp, dt) = self.here();
                    match self.bump() {
                        Tok::Num(d) => {
                            if d.is_zero() {
                                return Err(perr(p, &format!("{t}/{dt}"), "zero denominator"));
                            }
                            Ok(Poly::constant(BigRational::new(n, d)))
                        }
                        _ => Err(perr(dp, &dt, "expected an integer denominator")),
                    }
                } else {
                    Ok(Poly::constant(Rational::from_integer(n)))
                }
            }
            Tok::Ident(name) => {
                if let Some(i) = CORE_NAMES.iter().position(|c| *c == name) {
                    return Ok(Poly::var(Var(i as u8)));
                }
                if let Some((_, v)) = self.params.iter().find(|(n, _)| *n == name) {
                    return Ok(Poly::var(*v));
                }
                Err(perr(p, &t, "undeclared identifier"))
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                let (cp, ct) = self.here();
                match self.bump() {
                    Tok::Sym(')') => Ok(e),
                    _ => Err(perr(cp, &ct, "expected `)`")),
                }
            }
            _ => Err(perr(p, &t, "expected a number, variable or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s, &["alpha"]).unwrap()
    }

    #[test]
    fn binomial_substitution() {
        let mu2 = Poly::m().pow(2);
        let r = mu2.substitute(Var::MU, &-(Poly::l() + Poly::d()));
        assert_eq!(r, p("l^2 + 2*l*d + d^2"));
    }

    #[test]
    fn substitute_to_zero() {
        assert!(Poly::l().substitute(Var::LAMBDA, &Poly::zero()).is_zero());
    }

    #[test]
    fn substitute_with_named_params() {
        let m = Poly::param("mm").unwrap();
        let n = Poly::param("nn").unwrap();
        let e = &m * &Poly::d() + &(&m + &n) * &Poly::l();
        let r = e.substitute(Var::LAMBDA, &-Poly::d());
        assert_eq!(r, -(&n * &Poly::d()));
    }

    #[test]
    fn slot_sum_divisibility() {
        let s = Poly::slot_sum(3);
        assert!((&s * &Poly::slot(1)).divisible_by_slot_sum().unwrap());
        assert!(!Poly::slot(1).divisible_by_slot_sum().unwrap());
        let f = p("d1^2 - d3^2 + d2*d1 - d2*d3");
        assert!(f.divisible_by_slot_sum().unwrap());
        assert_eq!(f, &s * &p("d1 - d3"));
        assert!(matches!(
            Poly::l().divisible_by_slot_sum(),
            Err(PolyError::Unreduced(_))
        ));
    }

    #[test]
    fn equality_is_structural() {
        assert!(poly_equal(
            &(Poly::l() + Poly::d()).pow(2),
            &p("l^2+2*l*d+d^2")
        ));
        assert_eq!(&Poly::l() * &Poly::d(), &Poly::d() * &Poly::l());
        let a = Poly::param("alpha").unwrap();
        assert_eq!(&a * &Poly::l(), &Poly::l() * &a);
    }

    #[test]
    fn display_round_trip() {
        for s in [
            "0",
            "-3/2*d^2*l + alpha - 7",
            "d1*d2 - 2*d3",
            "(d+l)^3",
            "-l",
        ] {
            let q = p(s);
            let text = q.to_string();
            assert_eq!(p(&text), q, "{s} -> {text}");
            assert_eq!(p(&text).to_string(), text);
        }
        assert_eq!(p("4*l + 2*d").to_string(), "2*d + 4*l");
    }

    #[test]
    fn parse_errors_carry_position() {
        match Poly::parse("d + 1/0", &[]) {
            Err(PolyError::Parse { pos, token, .. }) => {
                assert_eq!(pos, 4);
                assert_eq!(token, "1/0");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(Poly::parse("x", &[]).is_err());
        assert!(Poly::parse("", &[]).is_err());
        assert!(Poly::parse("(d", &[]).is_err());
        assert!(Poly::parse("d $ l", &[]).is_err());
    }

    #[test]
    fn coefficients_by_variable() {
        let f = p("3*l^2*d + l - 5");
        let c = f.coefficients_in(Var::LAMBDA);
        assert_eq!(c, vec![p("-5"), p("1"), p("3*d")]);
    }

    #[test]
    fn reserved_param_names_rejected() {
        assert!(matches!(Var::param("d1"), Err(PolyError::ReservedName(_))));
        assert!(matches!(Var::param("1x"), Err(PolyError::BadParamName(_))));
    }
}
