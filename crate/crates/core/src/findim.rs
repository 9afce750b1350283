//! Finite-dimensional algebras, coalgebras and bialgebras given by
//! structure constants, with identity checkers evaluated on basis tuples.
//!
//! Conventions (all indices 0-based internally):
//! * operation tensor `c[i][j][k]`: `e_i op e_j = Σ_k c[i][j][k] e_k`;
//! * coproduct tensor `d[k][i][j]`: `Δ(e_k) = Σ_{i,j} d[k][i][j] e_i ⊗ e_j`;
//! * linear map `m[i][j]`: `D(e_i) = Σ_j m[i][j] e_j`.

use crate::exactpoly::Poly;
use crate::report::{ident, run_all, CheckReport, Ident};
use crate::tensor::Tensor;
use std::collections::BTreeMap;
use thiserror::Error;

/// Operation names understood by the checkers.
pub const OP_NAMES: [&str; 8] = [
    "dot", "circ", "bracket", "succ", "lhd", "rhd", "diamond", "star",
];
/// Coproduct names understood by the checkers.
pub const COOP_NAMES: [&str; 3] = ["Delta1", "Delta2", "delta0"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinError {
    #[error("missing operation `{0}`")]
    MissingOp(String),
    #[error("missing coproduct `{0}`")]
    MissingCoop(String),
    #[error("missing linear map `{0}`")]
    MissingLinmap(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("dimension mismatch: {0}")]
    Dim(String),
    #[error("precondition failed: {}", .0.title)]
    Precondition(Box<CheckReport>),
}

/// A finite-dimensional vector space with named operations, coproducts
/// and linear maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinStructure {
    pub dim: usize,
    pub ops: BTreeMap<String, Tensor>,
    pub coops: BTreeMap<String, Tensor>,
    pub linmaps: BTreeMap<String, Tensor>,
    /// When set, identities are only evaluated on arguments `e_i` with
    /// `i <= window`. Used for truncations of graded infinite families.
    pub window: Option<usize>,
}

impl FinStructure {
    pub fn new(dim: usize) -> FinStructure {
        FinStructure {
            dim,
            ops: BTreeMap::new(),
            coops: BTreeMap::new(),
            linmaps: BTreeMap::new(),
            window: None,
        }
    }

    /// Add to the operation `name` the product `e_i op e_j ∋ p e_k`.
    pub fn add_op(&mut self, name: &str, i: usize, j: usize, k: usize, p: Poly) {
        let n = self.dim;
        self.ops
            .entry(name.to_string())
            .or_insert_with(|| Tensor::zeros(n, 3))
            .add_at(&[i, j, k], &p);
    }

    /// Add to the coproduct `name` the term `p e_i ⊗ e_j` of `Δ(e_k)`.
    pub fn add_coop(&mut self, name: &str, k: usize, i: usize, j: usize, p: Poly) {
        let n = self.dim;
        self.coops
            .entry(name.to_string())
            .or_insert_with(|| Tensor::zeros(n, 3))
            .add_at(&[k, i, j], &p);
    }

    /// Add `p e_j` to the image of `e_i` under the linear map `name`.
    pub fn add_linmap(&mut self, name: &str, i: usize, j: usize, p: Poly) {
        let n = self.dim;
        self.linmaps
            .entry(name.to_string())
            .or_insert_with(|| Tensor::zeros(n, 2))
            .add_at(&[i, j], &p);
    }

    pub fn zero_op(&mut self, name: &str) {
        self.ops
            .insert(name.to_string(), Tensor::zeros(self.dim, 3));
    }

    pub fn zero_coop(&mut self, name: &str) {
        self.coops
            .insert(name.to_string(), Tensor::zeros(self.dim, 3));
    }

    pub fn op(&self, name: &str) -> Result<&Tensor, FinError> {
        self.ops
            .get(name)
            .ok_or_else(|| FinError::MissingOp(name.to_string()))
    }

    pub fn coop(&self, name: &str) -> Result<&Tensor, FinError> {
        self.coops
            .get(name)
            .ok_or_else(|| FinError::MissingCoop(name.to_string()))
    }

    pub fn linmap(&self, name: &str) -> Result<&Tensor, FinError> {
        self.linmaps
            .get(name)
            .ok_or_else(|| FinError::MissingLinmap(name.to_string()))
    }

    /// Number of basis vectors used as identity arguments.
    pub fn arg_count(&self) -> usize {
        match self.window {
            Some(w) => (w + 1).min(self.dim),
            None => self.dim,
        }
    }

    /// Check tensor shapes and names.
    pub fn validate(&self) -> Result<(), FinError> {
        for (name, t) in &self.ops {
            if !OP_NAMES.contains(&name.as_str()) {
                return Err(FinError::UnknownName(name.clone()));
            }
            if t.rank != self.dim || t.order != 3 {
                return Err(FinError::Dim(format!("operation `{name}`")));
            }
        }
        for (name, t) in &self.coops {
            if !COOP_NAMES.contains(&name.as_str()) {
                return Err(FinError::UnknownName(name.clone()));
            }
            if t.rank != self.dim || t.order != 3 {
                return Err(FinError::Dim(format!("coproduct `{name}`")));
            }
        }
        for (name, t) in &self.linmaps {
            if t.rank != self.dim || t.order != 2 {
                return Err(FinError::Dim(format!("linear map `{name}`")));
            }
        }
        Ok(())
    }

    pub fn substitute_param(&self, v: crate::exactpoly::Var, value: &Poly) -> FinStructure {
        let sub = |m: &BTreeMap<String, Tensor>| {
            m.iter()
                .map(|(k, t)| (k.clone(), t.substitute(v, value)))
                .collect()
        };
        FinStructure {
            dim: self.dim,
            ops: sub(&self.ops),
            coops: sub(&self.coops),
            linmaps: sub(&self.linmaps),
            window: self.window,
        }
    }
}

// ---------------------------------------------------------------------------
// Linear algebra on structure tensors
// ---------------------------------------------------------------------------

/// Basis vector `e_i` of an `n`-dimensional space.
pub fn basis(n: usize, i: usize) -> Vec<Poly> {
    let mut v = vec![Poly::zero(); n];
    v[i] = Poly::one();
    v
}

/// Bilinear product of two coordinate vectors.
pub fn prod(c: &Tensor, x: &[Poly], y: &[Poly]) -> Vec<Poly> {
    let n = c.rank;
    let mut out = vec![Poly::zero(); n];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let xy = xi * yj;
            for (k, o) in out.iter_mut().enumerate() {
                let ck = c.get(&[i, j, k]);
                if !ck.is_zero() {
                    *o += &xy * ck;
                }
            }
        }
    }
    out
}

fn vadd(x: &[Poly], y: &[Poly]) -> Vec<Poly> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn vsub(x: &[Poly], y: &[Poly]) -> Vec<Poly> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn vnonzero(v: Vec<Poly>) -> Vec<(Vec<usize>, Poly)> {
    v.into_iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(k, p)| (vec![k], p))
        .collect()
}

/// Matrix of left multiplication `x ↦ e_p op x`.
pub fn lmat(c: &Tensor, p: usize) -> Tensor {
    let n = c.rank;
    let mut m = Tensor::zeros(n, 2);
    for i in 0..n {
        for j in 0..n {
            *m.get_mut(&[i, j]) = c.get(&[p, i, j]).clone();
        }
    }
    m
}

/// Matrix of right multiplication `x ↦ x op e_p`.
pub fn rmat(c: &Tensor, p: usize) -> Tensor {
    let n = c.rank;
    let mut m = Tensor::zeros(n, 2);
    for i in 0..n {
        for j in 0..n {
            *m.get_mut(&[i, j]) = c.get(&[i, p, j]).clone();
        }
    }
    m
}

/// Apply the vector `x` through the matrix `m`.
pub fn apply_mat(m: &Tensor, x: &[Poly]) -> Vec<Poly> {
    let n = m.rank;
    let mut out = vec![Poly::zero(); n];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            let mij = m.get(&[i, j]);
            if !mij.is_zero() {
                *o += xi * mij;
            }
        }
    }
    out
}

/// Apply the matrix `m` to tensor slot `s`.
pub fn apply_slot(t: &Tensor, s: usize, m: &Tensor) -> Tensor {
    let mut out = Tensor::zeros(t.rank, t.order);
    for (ix, p) in t.nonzero() {
        let i = ix[s];
        for j in 0..t.rank {
            let q = m.get(&[i, j]);
            if q.is_zero() {
                continue;
            }
            let mut nix = ix.clone();
            nix[s] = j;
            out.add_at(&nix, &(&p * q));
        }
    }
    out
}

/// `Δ(e_a)` as an order-2 tensor.
pub fn co_basis(d: &Tensor, a: usize) -> Tensor {
    let n = d.rank;
    let mut out = Tensor::zeros(n, 2);
    for i in 0..n {
        for j in 0..n {
            *out.get_mut(&[i, j]) = d.get(&[a, i, j]).clone();
        }
    }
    out
}

/// Apply the coproduct `d` to tensor slot `s`, raising the order by one.
pub fn co_slot(t: &Tensor, s: usize, d: &Tensor) -> Tensor {
    let n = t.rank;
    let mut out = Tensor::zeros(n, t.order + 1);
    for (ix, p) in t.nonzero() {
        let k = ix[s];
        for i in 0..n {
            for j in 0..n {
                let q = d.get(&[k, i, j]);
                if q.is_zero() {
                    continue;
                }
                let mut nix = Vec::with_capacity(t.order + 1);
                nix.extend_from_slice(&ix[..s]);
                nix.push(i);
                nix.push(j);
                nix.extend_from_slice(&ix[s + 1..]);
                out.add_at(&nix, &(&p * q));
            }
        }
    }
    out
}

/// Flip `τ` on an order-2 tensor.
pub fn tau(t: &Tensor) -> Tensor {
    t.permute_indices(&[1, 0])
}

/// `τ ⊗ I` on an order-3 tensor.
pub fn tau12(t: &Tensor) -> Tensor {
    t.permute_indices(&[1, 0, 2])
}

fn tnonzero(t: Tensor) -> Vec<(Vec<usize>, Poly)> {
    t.nonzero()
}

// ---------------------------------------------------------------------------
// Kinds
// ---------------------------------------------------------------------------

kind_enum!(StructureKind {
    CommAssoc => "comm-assoc",
    Lie => "lie",
    LeftSymmetric => "left-symmetric",
    Novikov => "novikov",
    Zinbiel => "zinbiel",
    GD => "gd",
    Poisson => "poisson",
    DiffNovikovPoisson => "diff-np",
    PGD => "pgd",
    PreNovikov => "pre-novikov",
    PreGD => "pre-gd",
    PrePoisson => "pre-poisson",
    PreDiffNP => "pre-diff-np",
    PrePGD => "pre-pgd",
});

kind_enum!(CoKind {
    NovikovCo => "novikov-co",
    CocommCoassoc => "cocomm-coassoc",
    LieCo => "lie-co",
    GDCo => "gd-co",
    PoissonCo => "poisson-co",
    DiffNPCo => "diff-np-co",
    PGDCo => "pgd-co",
});

kind_enum!(BiKind {
    NovikovBi => "novikov-bi",
    ASIBi => "asi-bi",
    LieBi => "lie-bi",
    GDBi => "gd-bi",
    PoissonBi => "poisson-bi",
    DiffNPBi => "diff-np-bi",
    PGDBi => "pgd-bi",
});

impl CoKind {
    /// The algebra kind satisfied by the transpose structure on the dual
    /// space.
    pub fn transpose_kind(self) -> StructureKind {
        match self {
            CoKind::NovikovCo => StructureKind::Novikov,
            CoKind::CocommCoassoc => StructureKind::CommAssoc,
            CoKind::LieCo => StructureKind::Lie,
            CoKind::GDCo => StructureKind::GD,
            CoKind::PoissonCo => StructureKind::Poisson,
            CoKind::DiffNPCo => StructureKind::DiffNovikovPoisson,
            CoKind::PGDCo => StructureKind::PGD,
        }
    }
}

// ---------------------------------------------------------------------------
// Identity tables
// ---------------------------------------------------------------------------

/// Operation tensors needed by the algebra identities, with `diamond`
/// possibly defaulted to zero.
struct Ops<'a> {
    n: usize,
    a: &'a FinStructure,
    zero: Tensor,
}

impl<'a> Ops<'a> {
    fn get(&self, name: &str) -> Result<&Tensor, FinError> {
        match self.a.ops.get(name) {
            Some(t) => Ok(t),
            None if name == "diamond" => Ok(&self.zero),
            None => Err(FinError::MissingOp(name.to_string())),
        }
    }
}

fn e(n: usize, i: usize) -> Vec<Poly> {
    basis(n, i)
}

fn comm_assoc<'a>(n: usize, dot: &'a Tensor) -> Vec<Ident<'a>> {
    vec![
        ident("commutativity(dot)", 2, move |t| {
            let (a, b) = (e(n, t[0]), e(n, t[1]));
            vnonzero(vsub(&prod(dot, &a, &b), &prod(dot, &b, &a)))
        }),
        ident("associativity(dot)", 3, move |t| {
            let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
            let lhs = prod(dot, &prod(dot, &a, &b), &c);
            let rhs = prod(dot, &a, &prod(dot, &b, &c));
            vnonzero(vsub(&lhs, &rhs))
        }),
    ]
}

fn lie<'a>(n: usize, br: &'a Tensor) -> Vec<Ident<'a>> {
    vec![
        ident("skew-symmetry(bracket)", 2, move |t| {
            let (a, b) = (e(n, t[0]), e(n, t[1]));
            vnonzero(vadd(&prod(br, &a, &b), &prod(br, &b, &a)))
        }),
        ident("Jacobi(bracket)", 3, move |t| {
            let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
            let x = prod(br, &a, &prod(br, &b, &c));
            let y = prod(br, &prod(br, &a, &b), &c);
            let z = prod(br, &b, &prod(br, &a, &c));
            vnonzero(vsub(&vsub(&x, &y), &z))
        }),
    ]
}

fn left_symmetric<'a>(n: usize, name: &str, o: &'a Tensor) -> Vec<Ident<'a>> {
    vec![ident(format!("left-symmetry({name})"), 3, move |t| {
        let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
        let x = vsub(
            &prod(o, &prod(o, &a, &b), &c),
            &prod(o, &a, &prod(o, &b, &c)),
        );
        let y = vsub(
            &prod(o, &prod(o, &b, &a), &c),
            &prod(o, &b, &prod(o, &a, &c)),
        );
        vnonzero(vsub(&x, &y))
    })]
}

fn novikov<'a>(n: usize, circ: &'a Tensor) -> Vec<Ident<'a>> {
    let mut v = left_symmetric(n, "circ", circ);
    v.push(ident("right-commutativity(circ)", 3, move |t| {
        let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
        let x = prod(circ, &prod(circ, &a, &b), &c);
        let y = prod(circ, &prod(circ, &a, &c), &b);
        vnonzero(vsub(&x, &y))
    }));
    v
}

fn zinbiel<'a>(n: usize, s: &'a Tensor) -> Vec<Ident<'a>> {
    vec![ident("Zinbiel(succ)", 3, move |t| {
        let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
        let lhs = prod(s, &a, &prod(s, &b, &c));
        let sym = vadd(&prod(s, &b, &a), &prod(s, &a, &b));
        vnonzero(vsub(&lhs, &prod(s, &sym, &c)))
    })]
}

fn gd_compat<'a>(n: usize, circ: &'a Tensor, br: &'a Tensor) -> Vec<Ident<'a>> {
    vec![ident("eqq3", 3, move |t| {
        let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
        let mut r = prod(br, &prod(circ, &a, &b), &c);
        r = vsub(&r, &prod(br, &prod(circ, &a, &c), &b));
        r = vadd(&r, &prod(circ, &prod(br, &a, &b), &c));
        r = vsub(&r, &prod(circ, &prod(br, &a, &c), &b));
        r = vsub(&r, &prod(circ, &a, &prod(br, &b, &c)));
        vnonzero(r)
    })]
}

fn leibniz<'a>(n: usize, dot: &'a Tensor, br: &'a Tensor) -> Vec<Ident<'a>> {
    vec![ident("Leibniz", 3, move |t| {
        let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
        let lhs = prod(br, &a, &prod(dot, &b, &c));
        let r1 = prod(dot, &prod(br, &a, &b), &c);
        let r2 = prod(dot, &b, &prod(br, &a, &c));
        vnonzero(vsub(&vsub(&lhs, &r1), &r2))
    })]
}

fn dnp_compat<'a>(n: usize, circ: &'a Tensor, dot: &'a Tensor) -> Vec<Ident<'a>> {
    vec![
        ident("eqNP1", 3, move |t| {
            let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
            let lhs = prod(circ, &prod(dot, &a, &b), &c);
            let rhs = prod(dot, &a, &prod(circ, &b, &c));
            vnonzero(vsub(&lhs, &rhs))
        }),
        ident("eqNP2", 3, move |t| {
            let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
            let lhs = prod(circ, &a, &prod(dot, &b, &c));
            let r1 = prod(dot, &prod(circ, &a, &b), &c);
            let r2 = prod(dot, &b, &prod(circ, &a, &c));
            vnonzero(vsub(&vsub(&lhs, &r1), &r2))
        }),
    ]
}

fn pre_novikov<'a>(n: usize, lhd: &'a Tensor, rhd: &'a Tensor) -> Vec<Ident<'a>> {
    let circ = move |x: &[Poly], y: &[Poly]| vadd(&prod(rhd, x, y), &prod(lhd, x, y));
    vec![
        ident("ND1", 3, move |t| {
            let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
            let lhs = prod(rhd, &a, &prod(rhd, &b, &c));
            let mut rhs = prod(rhd, &circ(&a, &b), &c);
            rhs = vadd(&rhs, &prod(rhd, &b, &prod(rhd, &a, &c)));
            rhs = vsub(&rhs, &prod(rhd, &circ(&b, &a), &c));
            vnonzero(vsub(&lhs, &rhs))
        }),
        ident("ND2", 3, move |t| {
            let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
            let lhs = prod(rhd, &a, &prod(lhd, &b, &c));
            let mut rhs = prod(lhd, &prod(rhd, &a, &b), &c);
            rhs = vadd(&rhs, &prod(lhd, &b, &circ(&a, &c)));
            rhs = vsub(&rhs, &prod(lhd, &prod(lhd, &b, &a), &c));
            vnonzero(vsub(&lhs, &rhs))
        }),
        ident("ND3", 3, move |t| {
            let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
            let lhs = prod(rhd, &circ(&a, &b), &c);
            let rhs = prod(lhd, &prod(rhd, &a, &c), &b);
            vnonzero(vsub(&lhs, &rhs))
        }),
        ident("ND4", 3, move |t| {
            let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
            let lhs = prod(lhd, &prod(lhd, &a, &b), &c);
            let rhs = prod(lhd, &prod(lhd, &a, &c), &b);
            vnonzero(vsub(&lhs, &rhs))
        }),
    ]
}

fn pre_gd_compat<'a>(
    n: usize,
    lhd: &'a Tensor,
    rhd: &'a Tensor,
    dia: &'a Tensor,
) -> Vec<Ident<'a>> {
    vec![
        ident("lnd1", 3, move |t| {
            let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
            let comm = vsub(&prod(dia, &a, &b), &prod(dia, &b, &a));
            let mut r = prod(lhd, &c, &comm);
            r = vsub(&r, &prod(dia, &a, &prod(lhd, &c, &b)));
            r = vsub(&r, &prod(lhd, &prod(dia, &b, &c), &a));
            r = vadd(&r, &prod(dia, &b, &prod(lhd, &c, &a)));
            r = vadd(&r, &prod(lhd, &prod(dia, &a, &c), &b));
            vnonzero(r)
        }),
        ident("lnd2", 3, move |t| {
            let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
            let comm = vsub(&prod(dia, &a, &b), &prod(dia, &b, &a));
            let circ_ab = vadd(&prod(lhd, &a, &b), &prod(rhd, &a, &b));
            let lhs = vadd(&prod(rhd, &comm, &c), &prod(dia, &circ_ab, &c));
            let mut rhs = prod(rhd, &a, &prod(dia, &b, &c));
            rhs = vsub(&rhs, &prod(dia, &b, &prod(rhd, &a, &c)));
            rhs = vadd(&rhs, &prod(lhd, &prod(dia, &a, &c), &b));
            vnonzero(vsub(&lhs, &rhs))
        }),
    ]
}

fn pre_poisson_compat<'a>(n: usize, dia: &'a Tensor, s: &'a Tensor) -> Vec<Ident<'a>> {
    vec![
        ident("PP-eq1", 3, move |t| {
            let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
            let comm = vsub(&prod(dia, &a, &b), &prod(dia, &b, &a));
            let lhs = prod(s, &comm, &c);
            let rhs = vsub(
                &prod(dia, &a, &prod(s, &b, &c)),
                &prod(s, &b, &prod(dia, &a, &c)),
            );
            vnonzero(vsub(&lhs, &rhs))
        }),
        ident("PP-eq2", 3, move |t| {
            let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
            let sym = vadd(&prod(s, &a, &b), &prod(s, &b, &a));
            let lhs = prod(dia, &sym, &c);
            let rhs = vadd(
                &prod(s, &a, &prod(dia, &b, &c)),
                &prod(s, &b, &prod(dia, &a, &c)),
            );
            vnonzero(vsub(&lhs, &rhs))
        }),
    ]
}

fn pre_dnp_compat<'a>(n: usize, lhd: &'a Tensor, rhd: &'a Tensor, s: &'a Tensor) -> Vec<Ident<'a>> {
    let circ = move |x: &[Poly], y: &[Poly]| vadd(&prod(lhd, x, y), &prod(rhd, x, y));
    let sym = move |x: &[Poly], y: &[Poly]| vadd(&prod(s, x, y), &prod(s, y, x));
    vec![
        ident("PDNP-eq1(i)", 3, move |t| {
            let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
            let lhs = prod(rhd, &sym(&a, &b), &c);
            let rhs = prod(s, &a, &prod(rhd, &b, &c));
            vnonzero(vsub(&lhs, &rhs))
        }),
        ident("PDNP-eq1(ii)", 3, move |t| {
            let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
            let lhs = prod(lhd, &prod(s, &a, &c), &b);
            let rhs = prod(s, &a, &prod(lhd, &c, &b));
            vnonzero(vsub(&lhs, &rhs))
        }),
        ident("PDNP-eq1(iii)", 3, move |t| {
            let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
            let lhs = prod(s, &a, &prod(lhd, &c, &b));
            let rhs = prod(s, &circ(&a, &b), &c);
            vnonzero(vsub(&lhs, &rhs))
        }),
        ident("PDNP-eq2", 3, move |t| {
            let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
            let lhs = prod(rhd, &a, &prod(s, &b, &c));
            let rhs = vadd(
                &prod(s, &circ(&a, &b), &c),
                &prod(s, &b, &prod(rhd, &a, &c)),
            );
            vnonzero(vsub(&lhs, &rhs))
        }),
        ident("PDNP-eq3", 3, move |t| {
            let (a, b, c) = (e(n, t[0]), e(n, t[1]), e(n, t[2]));
            let lhs = prod(lhd, &c, &sym(&a, &b));
            let rhs = vadd(
                &prod(s, &b, &prod(lhd, &c, &a)),
                &prod(s, &a, &prod(lhd, &c, &b)),
            );
            vnonzero(vsub(&lhs, &rhs))
        }),
    ]
}

fn structure_idents<'a>(
    kind: StructureKind,
    o: &'a Ops<'a>,
    notes: &mut Vec<String>,
) -> Result<Vec<Ident<'a>>, FinError> {
    use StructureKind::*;
    let n = o.n;
    let mut uses_diamond = false;
    let mut dia = || -> Result<&'a Tensor, FinError> {
        uses_diamond = true;
        o.get("diamond")
    };
    let v = match kind {
        CommAssoc => comm_assoc(n, o.get("dot")?),
        Lie => lie(n, o.get("bracket")?),
        LeftSymmetric => left_symmetric(n, "circ", o.get("circ")?),
        Novikov => novikov(n, o.get("circ")?),
        Zinbiel => zinbiel(n, o.get("succ")?),
        GD => {
            let (c, b) = (o.get("circ")?, o.get("bracket")?);
            let mut v = novikov(n, c);
            v.extend(lie(n, b));
            v.extend(gd_compat(n, c, b));
            v
        }
        Poisson => {
            let (d, b) = (o.get("dot")?, o.get("bracket")?);
            let mut v = comm_assoc(n, d);
            v.extend(lie(n, b));
            v.extend(leibniz(n, d, b));
            v
        }
        DiffNovikovPoisson => {
            let (c, d) = (o.get("circ")?, o.get("dot")?);
            let mut v = comm_assoc(n, d);
            v.extend(novikov(n, c));
            v.extend(dnp_compat(n, c, d));
            v
        }
        PGD => {
            let mut v = structure_idents(GD, o, notes)?;
            v.extend(structure_idents(Poisson, o, notes)?);
            v.extend(structure_idents(DiffNovikovPoisson, o, notes)?);
            v
        }
        PreNovikov => pre_novikov(n, o.get("lhd")?, o.get("rhd")?),
        PreGD => {
            let (l, r, d) = (o.get("lhd")?, o.get("rhd")?, dia()?);
            let mut v = pre_novikov(n, l, r);
            v.extend(left_symmetric(n, "diamond", d));
            v.extend(pre_gd_compat(n, l, r, d));
            v
        }
        PrePoisson => {
            let (d, s) = (dia()?, o.get("succ")?);
            let mut v = left_symmetric(n, "diamond", d);
            v.extend(zinbiel(n, s));
            v.extend(pre_poisson_compat(n, d, s));
            v
        }
        PreDiffNP => {
            let (l, r, s) = (o.get("lhd")?, o.get("rhd")?, o.get("succ")?);
            let mut v = pre_novikov(n, l, r);
            v.extend(zinbiel(n, s));
            v.extend(pre_dnp_compat(n, l, r, s));
            v
        }
        PrePGD => {
            let mut v = structure_idents(PreDiffNP, o, notes)?;
            v.extend(structure_idents(PreGD, o, notes)?);
            v.extend(structure_idents(PrePoisson, o, notes)?);
            v
        }
    };
    if uses_diamond && !o.a.ops.contains_key("diamond") {
        let note = "diamond: defaulted to 0".to_string();
        if !notes.contains(&note) {
            notes.push(note);
        }
    }
    Ok(v)
}

/// Evaluate every identity of `kind` on all basis tuples.
pub fn check_fin_structure(kind: StructureKind, a: &FinStructure) -> Result<CheckReport, FinError> {
    a.validate()?;
    let o = Ops {
        n: a.dim,
        a,
        zero: Tensor::zeros(a.dim, 3),
    };
    let mut notes = Vec::new();
    let ids = structure_idents(kind, &o, &mut notes)?;
    let mut rep = run_all(kind.as_str(), a.arg_count(), ids);
    for n in notes {
        rep.note(n);
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Coalgebras
// ---------------------------------------------------------------------------

fn novikov_co<'a>(d1: &'a Tensor) -> Vec<Ident<'a>> {
    vec![
        ident("Lc3", 1, move |t| {
            let x = co_basis(d1, t[0]);
            let i_d = co_slot(&x, 1, d1);
            let d_i = co_slot(&x, 0, d1);
            let lhs = &i_d - &tau12(&i_d);
            let rhs = &d_i - &tau12(&d_i);
            tnonzero(&lhs - &rhs)
        }),
        ident("Lc4", 1, move |t| {
            let x = co_basis(d1, t[0]);
            let lhs = tau12(&co_slot(&tau(&x), 1, d1));
            let rhs = co_slot(&x, 0, d1);
            tnonzero(&lhs - &rhs)
        }),
    ]
}

fn cocomm_coassoc<'a>(d2: &'a Tensor) -> Vec<Ident<'a>> {
    vec![
        ident("coassociativity(Delta2)", 1, move |t| {
            let x = co_basis(d2, t[0]);
            tnonzero(&co_slot(&x, 0, d2) - &co_slot(&x, 1, d2))
        }),
        ident("cocommutativity(Delta2)", 1, move |t| {
            let x = co_basis(d2, t[0]);
            tnonzero(&x - &tau(&x))
        }),
    ]
}

fn lie_co<'a>(dl: &'a Tensor) -> Vec<Ident<'a>> {
    vec![
        ident("coskew-symmetry(delta0)", 1, move |t| {
            let x = co_basis(dl, t[0]);
            tnonzero(&x + &tau(&x))
        }),
        ident("coJacobi(delta0)", 1, move |t| {
            let x = co_basis(dl, t[0]);
            let i_d = co_slot(&x, 1, dl);
            let r = &(&i_d - &tau12(&i_d)) - &co_slot(&x, 0, dl);
            tnonzero(r)
        }),
    ]
}

fn lc2<'a>(d1: &'a Tensor, dl: &'a Tensor) -> Vec<Ident<'a>> {
    vec![ident("Lc2", 1, move |t| {
        let x = co_basis(d1, t[0]);
        let y = co_basis(dl, t[0]);
        let mut r = co_slot(&x, 1, dl);
        r = &r - &tau12(&co_slot(&y, 1, d1));
        r = &r + &tau12(&co_slot(&tau(&x), 1, dl));
        r = &r - &co_slot(&y, 0, d1);
        r = &r - &co_slot(&x, 0, dl);
        tnonzero(r)
    })]
}

fn pc<'a>(d2: &'a Tensor, dl: &'a Tensor) -> Vec<Ident<'a>> {
    vec![ident("Pc", 1, move |t| {
        let x = co_basis(d2, t[0]);
        let y = co_basis(dl, t[0]);
        let lhs = co_slot(&y, 1, d2);
        let rhs = &co_slot(&x, 0, dl) + &tau12(&co_slot(&x, 1, dl));
        tnonzero(&lhs - &rhs)
    })]
}

fn dnpc<'a>(d1: &'a Tensor, d2: &'a Tensor) -> Vec<Ident<'a>> {
    vec![
        ident("DNPC-1", 1, move |t| {
            let x1 = co_basis(d1, t[0]);
            let x2 = co_basis(d2, t[0]);
            let lhs = co_slot(&x1, 1, d2);
            let rhs = &co_slot(&x2, 0, d1) + &tau12(&co_slot(&x2, 1, d1));
            tnonzero(&lhs - &rhs)
        }),
        ident("DNPC-2", 1, move |t| {
            let x1 = co_basis(d1, t[0]);
            let x2 = co_basis(d2, t[0]);
            let lhs = co_slot(&tau(&x1), 1, d2);
            let rhs = tau12(&co_slot(&x2, 0, d1));
            tnonzero(&lhs - &rhs)
        }),
    ]
}

fn coalgebra_idents<'a>(kind: CoKind, a: &'a FinStructure) -> Result<Vec<Ident<'a>>, FinError> {
    use CoKind::*;
    Ok(match kind {
        NovikovCo => novikov_co(a.coop("Delta1")?),
        CocommCoassoc => cocomm_coassoc(a.coop("Delta2")?),
        LieCo => lie_co(a.coop("delta0")?),
        GDCo => {
            let (d1, dl) = (a.coop("Delta1")?, a.coop("delta0")?);
            let mut v = novikov_co(d1);
            v.extend(lie_co(dl));
            v.extend(lc2(d1, dl));
            v
        }
        PoissonCo => {
            let (d2, dl) = (a.coop("Delta2")?, a.coop("delta0")?);
            let mut v = cocomm_coassoc(d2);
            v.extend(lie_co(dl));
            v.extend(pc(d2, dl));
            v
        }
        DiffNPCo => {
            let (d1, d2) = (a.coop("Delta1")?, a.coop("Delta2")?);
            let mut v = novikov_co(d1);
            v.extend(cocomm_coassoc(d2));
            v.extend(dnpc(d1, d2));
            v
        }
        PGDCo => {
            let mut v = coalgebra_idents(GDCo, a)?;
            v.extend(coalgebra_idents(PoissonCo, a)?);
            v.extend(coalgebra_idents(DiffNPCo, a)?);
            v
        }
    })
}

/// Evaluate every coalgebra identity of `kind` on all basis vectors.
pub fn check_fin_coalgebra(kind: CoKind, a: &FinStructure) -> Result<CheckReport, FinError> {
    a.validate()?;
    let ids = coalgebra_idents(kind, a)?;
    Ok(run_all(kind.as_str(), a.arg_count(), ids))
}

// ---------------------------------------------------------------------------
// Bialgebras
// ---------------------------------------------------------------------------

struct Bi<'a> {
    circ: Option<&'a Tensor>,
    dot: Option<&'a Tensor>,
    br: Option<&'a Tensor>,
    star: Option<Tensor>,
    d1: Option<&'a Tensor>,
    d2: Option<&'a Tensor>,
    dl: Option<&'a Tensor>,
}

impl<'a> Bi<'a> {
    fn new(a: &'a FinStructure) -> Bi<'a> {
        let circ = a.ops.get("circ");
        Bi {
            circ,
            dot: a.ops.get("dot"),
            br: a.ops.get("bracket"),
            star: circ.map(star_tensor),
            d1: a.coops.get("Delta1"),
            d2: a.coops.get("Delta2"),
            dl: a.coops.get("delta0"),
        }
    }

    fn need<'b>(t: Option<&'b Tensor>, name: &str, op: bool) -> Result<&'b Tensor, FinError> {
        t.ok_or_else(|| {
            if op {
                FinError::MissingOp(name.to_string())
            } else {
                FinError::MissingCoop(name.to_string())
            }
        })
    }
}

fn sym2(t: &Tensor) -> Tensor {
    t + &tau(t)
}

fn novikov_bi<'a>(circ: &'a Tensor, star: &'a Tensor, d1: &'a Tensor) -> Vec<Ident<'a>> {
    vec![
        ident("Lb5", 2, move |t| {
            let (a, b) = (t[0], t[1]);
            let ab = prod(circ, &basis(circ.rank, a), &basis(circ.rank, b));
            let lhs = co_vec(d1, &ab);
            let r1 = apply_slot(&co_basis(d1, a), 0, &rmat(circ, b));
            let r2 = apply_slot(&sym2(&co_basis(d1, b)), 1, &lmat(star, a));
            tnonzero(&lhs - &(&r1 + &r2))
        }),
        ident("Lb6", 2, move |t| {
            let (a, b) = (t[0], t[1]);
            let side = |x: usize, y: usize| {
                let dy = co_basis(d1, y);
                let l = lmat(star, x);
                &apply_slot(&dy, 0, &l) - &apply_slot(&tau(&dy), 1, &l)
            };
            tnonzero(&side(a, b) - &side(b, a))
        }),
        ident("Lb7", 2, move |t| {
            let (a, b) = (t[0], t[1]);
            let side = |x: usize, y: usize| {
                let s = sym2(&co_basis(d1, y));
                let r = rmat(circ, x);
                &apply_slot(&s, 1, &r) - &apply_slot(&s, 0, &r)
            };
            tnonzero(&side(a, b) - &side(b, a))
        }),
    ]
}

fn asi_bi<'a>(dot: &'a Tensor, d2: &'a Tensor) -> Vec<Ident<'a>> {
    vec![ident("ASI1", 2, move |t| {
        let (a, b) = (t[0], t[1]);
        let n = dot.rank;
        let lhs = co_vec(d2, &prod(dot, &basis(n, a), &basis(n, b)));
        let r1 = apply_slot(&co_basis(d2, b), 1, &lmat(dot, a));
        let r2 = apply_slot(&co_basis(d2, a), 0, &lmat(dot, b));
        tnonzero(&lhs - &(&r1 + &r2))
    })]
}

fn ad_both(t: &Tensor, m: &Tensor) -> Tensor {
    &apply_slot(t, 0, m) + &apply_slot(t, 1, m)
}

fn lie_bi<'a>(br: &'a Tensor, dl: &'a Tensor) -> Vec<Ident<'a>> {
    vec![ident("Lie-bialgebra", 2, move |t| {
        let (a, b) = (t[0], t[1]);
        let n = br.rank;
        let lhs = co_vec(dl, &prod(br, &basis(n, a), &basis(n, b)));
        let r1 = ad_both(&co_basis(dl, b), &lmat(br, a));
        let r2 = ad_both(&co_basis(dl, a), &lmat(br, b));
        tnonzero(&lhs - &(&r1 - &r2))
    })]
}

fn lb4<'a>(
    circ: &'a Tensor,
    star: &'a Tensor,
    br: &'a Tensor,
    d1: &'a Tensor,
    dl: &'a Tensor,
) -> Vec<Ident<'a>> {
    vec![ident("Lb4", 2, move |t| {
        let (a, b) = (t[0], t[1]);
        let n = br.rank;
        let (ea, eb) = (basis(n, a), basis(n, b));
        let lhs = &co_vec(dl, &prod(circ, &eb, &ea)) + &co_vec(d1, &prod(br, &ea, &eb));
        let da = co_basis(dl, a);
        let mut rhs = apply_slot(&co_basis(dl, b), 0, &rmat(circ, a));
        rhs = &rhs + &apply_slot(&da, 0, &lmat(circ, b));
        rhs = &rhs + &apply_slot(&da, 1, &lmat(star, b));
        rhs = &rhs + &ad_both(&co_basis(d1, b), &lmat(br, a));
        rhs = &rhs - &apply_slot(&sym2(&co_basis(d1, a)), 1, &lmat(br, b));
        tnonzero(&lhs - &rhs)
    })]
}

fn poisson_bi<'a>(
    dot: &'a Tensor,
    br: &'a Tensor,
    d2: &'a Tensor,
    dl: &'a Tensor,
) -> Vec<Ident<'a>> {
    vec![
        ident("PB1", 2, move |t| {
            let (a, b) = (t[0], t[1]);
            let n = dot.rank;
            let lhs = co_vec(dl, &prod(dot, &basis(n, a), &basis(n, b)));
            let mut rhs = apply_slot(&co_basis(dl, b), 0, &lmat(dot, a));
            rhs = &rhs + &apply_slot(&co_basis(dl, a), 0, &lmat(dot, b));
            rhs = &rhs + &apply_slot(&co_basis(d2, b), 1, &lmat(br, a));
            rhs = &rhs + &apply_slot(&co_basis(d2, a), 1, &lmat(br, b));
            tnonzero(&lhs - &rhs)
        }),
        ident("PB2", 2, move |t| {
            let (a, b) = (t[0], t[1]);
            let n = dot.rank;
            let lhs = co_vec(d2, &prod(br, &basis(n, a), &basis(n, b)));
            let da = co_basis(dl, a);
            let lb = lmat(dot, b);
            let mut rhs = ad_both(&co_basis(d2, b), &lmat(br, a));
            rhs = &rhs - &apply_slot(&da, 1, &lb);
            rhs = &rhs + &apply_slot(&da, 0, &lb);
            tnonzero(&lhs - &rhs)
        }),
    ]
}

fn dnp_bi<'a>(
    circ: &'a Tensor,
    star: &'a Tensor,
    dot: &'a Tensor,
    d1: &'a Tensor,
    d2: &'a Tensor,
) -> Vec<Ident<'a>> {
    vec![
        ident("DNPB1", 2, move |t| {
            let (a, b) = (t[0], t[1]);
            let n = dot.rank;
            let lhs = co_vec(d1, &prod(dot, &basis(n, a), &basis(n, b)));
            let rhs = &apply_slot(&co_basis(d1, b), 0, &lmat(dot, a))
                - &apply_slot(&co_basis(d2, a), 1, &lmat(star, b));
            tnonzero(&lhs - &rhs)
        }),
        ident("DNPB2", 2, move |t| {
            let (a, b) = (t[0], t[1]);
            let n = dot.rank;
            let lhs = co_vec(d2, &prod(circ, &basis(n, a), &basis(n, b)));
            let rhs = &apply_slot(&co_basis(d2, a), 0, &rmat(circ, b))
                - &apply_slot(&sym2(&co_basis(d1, b)), 1, &lmat(dot, a));
            tnonzero(&lhs - &rhs)
        }),
        ident("DNPB4", 2, move |t| {
            let (a, b) = (t[0], t[1]);
            let mut r = apply_slot(&co_basis(d2, b), 0, &lmat(circ, a));
            r = &r + &apply_slot(&co_basis(d2, a), 1, &lmat(circ, b));
            r = &r + &apply_slot(&co_basis(d1, a), 1, &lmat(dot, b));
            r = &r + &apply_slot(&tau(&co_basis(d1, b)), 0, &lmat(dot, a));
            tnonzero(r)
        }),
    ]
}

fn dnpb3<'a>(star: &'a Tensor, dot: &'a Tensor, d1: &'a Tensor, d2: &'a Tensor) -> Ident<'a> {
    ident("DNPB3", 2, move |t| {
        let (a, b) = (t[0], t[1]);
        let side = |x: usize, y: usize| {
            &apply_slot(&co_basis(d1, y), 0, &lmat(dot, x))
                + &apply_slot(&co_basis(d2, y), 1, &lmat(star, x))
        };
        tnonzero(&side(a, b) - &side(b, a))
    })
}

/// `Δ(x)` for a coordinate vector `x`.
pub fn co_vec(d: &Tensor, x: &[Poly]) -> Tensor {
    let n = d.rank;
    let mut out = Tensor::zeros(n, 2);
    for (k, xk) in x.iter().enumerate() {
        if xk.is_zero() {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                let q = d.get(&[k, i, j]);
                if !q.is_zero() {
                    out.add_at(&[i, j], &(xk * q));
                }
            }
        }
    }
    out
}

fn bialgebra_idents<'a>(
    kind: BiKind,
    bi: &'a Bi<'a>,
    diag: &mut Vec<Ident<'a>>,
) -> Result<Vec<Ident<'a>>, FinError> {
    use BiKind::*;
    let circ = || Bi::need(bi.circ, "circ", true);
    let star = || Bi::need(bi.star.as_ref(), "circ", true);
    let dot = || Bi::need(bi.dot, "dot", true);
    let br = || Bi::need(bi.br, "bracket", true);
    let d1 = || Bi::need(bi.d1, "Delta1", false);
    let d2 = || Bi::need(bi.d2, "Delta2", false);
    let dl = || Bi::need(bi.dl, "delta0", false);
    Ok(match kind {
        NovikovBi => novikov_bi(circ()?, star()?, d1()?),
        ASIBi => asi_bi(dot()?, d2()?),
        LieBi => lie_bi(br()?, dl()?),
        GDBi => {
            let mut v = novikov_bi(circ()?, star()?, d1()?);
            v.extend(lie_bi(br()?, dl()?));
            v.extend(lb4(circ()?, star()?, br()?, d1()?, dl()?));
            v
        }
        PoissonBi => {
            let mut v = asi_bi(dot()?, d2()?);
            v.extend(lie_bi(br()?, dl()?));
            v.extend(poisson_bi(dot()?, br()?, d2()?, dl()?));
            v
        }
        DiffNPBi => {
            let mut v = novikov_bi(circ()?, star()?, d1()?);
            v.extend(asi_bi(dot()?, d2()?));
            v.extend(dnp_bi(circ()?, star()?, dot()?, d1()?, d2()?));
            if !diag.iter().any(|i| i.id == "DNPB3") {
                diag.push(dnpb3(star()?, dot()?, d1()?, d2()?));
            }
            v
        }
        PGDBi => {
            let mut v = bialgebra_idents(GDBi, bi, diag)?;
            v.extend(bialgebra_idents(PoissonBi, bi, diag)?);
            v.extend(bialgebra_idents(DiffNPBi, bi, diag)?);
            v
        }
    })
}

/// Evaluate the compatibility identities of `kind` on all basis pairs.
/// The algebra and coalgebra axioms are separate calls.
pub fn check_fin_bialgebra(kind: BiKind, a: &FinStructure) -> Result<CheckReport, FinError> {
    a.validate()?;
    let bi = Bi::new(a);
    let mut diag = Vec::new();
    let ids = bialgebra_idents(kind, &bi, &mut diag)?;
    let mut rep = run_all(kind.as_str(), a.arg_count(), ids);
    let diag_rep = run_all("diagnostics", a.arg_count(), diag);
    rep.diagnostics = diag_rep.identities;
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Derivations and constructions
// ---------------------------------------------------------------------------

/// Check the Leibniz rule `D(a op b) = D(a) op b + a op D(b)` on basis pairs.
pub fn check_derivation(
    a: &FinStructure,
    opname: &str,
    dm: &Tensor,
) -> Result<CheckReport, FinError> {
    let c = a.op(opname)?;
    if dm.rank != a.dim || dm.order != 2 {
        return Err(FinError::Dim("derivation matrix".into()));
    }
    let n = a.dim;
    let id = ident(format!("derivation({opname})"), 2, move |t| {
        let (x, y) = (basis(n, t[0]), basis(n, t[1]));
        let lhs = apply_mat(dm, &prod(c, &x, &y));
        let r1 = prod(c, &apply_mat(dm, &x), &y);
        let r2 = prod(c, &x, &apply_mat(dm, &y));
        vnonzero(vsub(&lhs, &vadd(&r1, &r2)))
    });
    Ok(run_all("derivation", a.arg_count(), vec![id]))
}

/// `a ⋆ b = a ∘ b + b ∘ a` as a structure tensor.
pub fn star_tensor(circ: &Tensor) -> Tensor {
    &circ.clone() + &circ.permute_indices(&[1, 0, 2])
}

/// Add the operation `star` derived from `circ`.
pub fn star_closure(a: &FinStructure) -> Result<FinStructure, FinError> {
    let s = star_tensor(a.op("circ")?);
    let mut out = a.clone();
    out.ops.insert("star".into(), s);
    Ok(out)
}

fn require(report: CheckReport) -> Result<(), FinError> {
    if report.passed() {
        Ok(())
    } else {
        Err(FinError::Precondition(Box::new(report)))
    }
}

/// The PGD operations `∘ = ◁ + ▷`, `a·b = a≻b + b≻a`, `[a,b] = a◇b − b◇a`
/// of a pre-PGD structure, without checking the pre-PGD axioms.
pub fn associated_pgd(a: &FinStructure) -> Result<FinStructure, FinError> {
    let lhd = a.op("lhd")?;
    let rhd = a.op("rhd")?;
    let succ = a.op("succ")?;
    let zero = Tensor::zeros(a.dim, 3);
    let dia = a.ops.get("diamond").unwrap_or(&zero);
    let mut out = FinStructure::new(a.dim);
    out.window = a.window;
    out.ops.insert("circ".into(), lhd + rhd);
    out.ops
        .insert("dot".into(), succ + &succ.permute_indices(&[1, 0, 2]));
    out.ops
        .insert("bracket".into(), dia - &dia.permute_indices(&[1, 0, 2]));
    Ok(out)
}

/// [`associated_pgd`] after verifying the pre-PGD axioms.
pub fn associated_pgd_of_pre_pgd(a: &FinStructure) -> Result<FinStructure, FinError> {
    require(check_fin_structure(StructureKind::PrePGD, a)?)?;
    associated_pgd(a)
}

/// `a ◁ b = D(b) ≻ a`, `a ▷ b = a ≻ D(b)`, keeping `≻` and setting `◇ = 0`,
/// without checking the Zinbiel and derivation hypotheses.
pub fn pre_pgd_from_zinbiel(a: &FinStructure, dm: &Tensor) -> Result<FinStructure, FinError> {
    let succ = a.op("succ")?;
    let n = a.dim;
    let mut lhd = Tensor::zeros(n, 3);
    let mut rhd = Tensor::zeros(n, 3);
    for i in 0..n {
        for j in 0..n {
            for p in 0..n {
                let dj = dm.get(&[j, p]);
                if dj.is_zero() {
                    continue;
                }
                for k in 0..n {
                    lhd.add_at(&[i, j, k], &(dj * succ.get(&[p, i, k])));
                    rhd.add_at(&[i, j, k], &(dj * succ.get(&[i, p, k])));
                }
            }
        }
    }
    let mut out = FinStructure::new(n);
    out.window = a.window;
    out.ops.insert("lhd".into(), lhd);
    out.ops.insert("rhd".into(), rhd);
    out.ops.insert("succ".into(), succ.clone());
    out.zero_op("diamond");
    Ok(out)
}

/// [`pre_pgd_from_zinbiel`] after verifying that `≻` is Zinbiel and `D` is a
/// derivation of it.
pub fn zinbiel_derivation_to_pre_pgd(
    a: &FinStructure,
    dm: &Tensor,
) -> Result<FinStructure, FinError> {
    let mut pre = check_fin_structure(StructureKind::Zinbiel, a)?;
    pre.merge(check_derivation(a, "succ", dm)?);
    pre.title = "zinbiel+derivation".into();
    require(pre)?;
    pre_pgd_from_zinbiel(a, dm)
}

/// Dual action `φ*(x)` of a matrix `φ(x)`, with the sign convention
/// `⟨φ*(x) f, u⟩ = −⟨f, φ(x) u⟩`.
fn dual_action(m: &Tensor) -> Tensor {
    -&m.permute_indices(&[1, 0])
}

/// Candidate PGD-bialgebra on `A ⊕ A*` built from a pre-PGD structure: the
/// semidirect product with the dual representation
/// `(L_▷* + R_◁*, −R_◁*, −L_≻*, L_◇*)` and the coproducts induced by
/// `r = Σ (e_i ⊗ e_i* − e_i* ⊗ e_i)`. Indices `n..2n` are the dual basis.
///
/// Whether the result is a PGD-bialgebra is a separate check; no claim is
/// made here.
pub fn claim_semidirect_pgd_bialgebra(a: &FinStructure) -> Result<FinStructure, FinError> {
    require(check_fin_structure(StructureKind::PrePGD, a)?)?;
    claim_candidate(a)
}

/// [`claim_semidirect_pgd_bialgebra`] without the pre-PGD check.
pub fn claim_candidate(a: &FinStructure) -> Result<FinStructure, FinError> {
    let n = a.dim;
    let lhd = a.op("lhd")?;
    let rhd = a.op("rhd")?;
    let succ = a.op("succ")?;
    let zero = Tensor::zeros(n, 3);
    let dia = a.ops.get("diamond").unwrap_or(&zero);
    let pgd = associated_pgd(a)?;
    let m = 2 * n;
    let mut hat = FinStructure::new(m);
    for name in ["circ", "dot", "bracket"] {
        hat.zero_op(name);
    }
    let embed = |hat: &mut FinStructure, name: &str, t: &Tensor| {
        for (ix, p) in t.nonzero() {
            hat.add_op(name, ix[0], ix[1], ix[2], p);
        }
    };
    embed(&mut hat, "circ", pgd.op("circ")?);
    embed(&mut hat, "dot", pgd.op("dot")?);
    embed(&mut hat, "bracket", pgd.op("bracket")?);
    for p in 0..n {
        let l = dual_action(&(&lmat(rhd, p) + &rmat(lhd, p)));
        let r = -&dual_action(&rmat(lhd, p));
        let sigma = -&dual_action(&lmat(succ, p));
        let rho = dual_action(&lmat(dia, p));
        for i in 0..n {
            for j in 0..n {
                let (u, v) = (n + i, n + j);
                hat.add_op("circ", p, u, v, l.get(&[i, j]).clone());
                hat.add_op("circ", u, p, v, r.get(&[i, j]).clone());
                hat.add_op("dot", p, u, v, sigma.get(&[i, j]).clone());
                hat.add_op("dot", u, p, v, sigma.get(&[i, j]).clone());
                hat.add_op("bracket", p, u, v, rho.get(&[i, j]).clone());
                hat.add_op("bracket", u, p, v, -rho.get(&[i, j]));
            }
        }
    }
    let circ = hat.op("circ")?.clone();
    let star = star_tensor(&circ);
    let dot = hat.op("dot")?.clone();
    let br = hat.op("bracket")?.clone();
    let mut r = Tensor::zeros(m, 2);
    for i in 0..n {
        *r.get_mut(&[i, n + i]) = Poly::one();
        *r.get_mut(&[n + i, i]) = Poly::int(-1);
    }
    for name in COOP_NAMES {
        hat.zero_coop(name);
    }
    for x in 0..m {
        let d1 = -&(&apply_slot(&r, 0, &lmat(&circ, x)) + &apply_slot(&r, 1, &lmat(&star, x)));
        let d2 = &apply_slot(&r, 1, &lmat(&dot, x)) - &apply_slot(&r, 0, &lmat(&dot, x));
        let dl = ad_both(&r, &lmat(&br, x));
        for (name, t) in [("Delta1", d1), ("Delta2", d2), ("delta0", dl)] {
            for (ix, p) in t.nonzero() {
                hat.add_coop(name, x, ix[0], ix[1], p);
            }
        }
    }
    hat.ops.insert("star".into(), star);
    hat.linmaps.insert("r".into(), r);
    Ok(hat)
}

/// The algebra on `A*` whose products are the transposes of the
/// coproducts: `Delta1 → circ`, `Delta2 → dot`, `delta0 → bracket`.
pub fn transpose_coalgebra(a: &FinStructure) -> FinStructure {
    let mut out = FinStructure::new(a.dim);
    out.window = a.window;
    for (co, op) in [("Delta1", "circ"), ("Delta2", "dot"), ("delta0", "bracket")] {
        if let Some(d) = a.coops.get(co) {
            out.ops.insert(op.into(), d.permute_indices(&[1, 2, 0]));
        }
    }
    out
}

/// Inverse of [`transpose_coalgebra`].
pub fn transpose_algebra(a: &FinStructure) -> FinStructure {
    let mut out = FinStructure::new(a.dim);
    out.window = a.window;
    for (co, op) in [("Delta1", "circ"), ("Delta2", "dot"), ("delta0", "bracket")] {
        if let Some(c) = a.ops.get(op) {
            out.coops.insert(co.into(), c.permute_indices(&[2, 0, 1]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zinbiel_final() -> (FinStructure, Tensor) {
        let alpha = Poly::param("alpha").unwrap();
        let mut a = FinStructure::new(3);
        a.add_op("succ", 0, 0, 1, Poly::one());
        a.add_op("succ", 0, 1, 2, Poly::one());
        a.add_op("succ", 1, 0, 2, Poly::one());
        let mut d = Tensor::zeros(3, 2);
        *d.get_mut(&[0, 0]) = Poly::one();
        *d.get_mut(&[0, 1]) = alpha.clone();
        *d.get_mut(&[1, 1]) = Poly::int(2);
        *d.get_mut(&[1, 2]) = Poly::int(2) * &alpha;
        *d.get_mut(&[2, 2]) = Poly::int(3);
        (a, d)
    }

    #[test]
    fn permute_convention_for_transpose() {
        // d[k][i][j] -> c[i][j][k]
        let mut a = FinStructure::new(2);
        a.add_coop("Delta2", 1, 0, 0, Poly::int(5));
        let t = transpose_coalgebra(&a);
        assert_eq!(t.op("dot").unwrap().get(&[0, 0, 1]), &Poly::int(5));
        let back = transpose_algebra(&t);
        assert_eq!(back.coop("Delta2").unwrap(), a.coop("Delta2").unwrap());
    }

    #[test]
    fn derivation_of_final_zinbiel() {
        let (a, d) = zinbiel_final();
        assert!(check_derivation(&a, "succ", &d).unwrap().passed());
        let mut id = Tensor::zeros(3, 2);
        for i in 0..3 {
            *id.get_mut(&[i, i]) = Poly::one();
        }
        let rep = check_derivation(&a, "succ", &id).unwrap();
        assert!(!rep.passed());
        // D(e1 ≻ e1) = e2 versus D(e1) ≻ e1 + e1 ≻ D(e1) = 2 e2
        let w = &rep.identities[0].witnesses[0];
        assert_eq!(w.args, vec![0, 0]);
        assert_eq!(w.residual, vec![(vec![1], Poly::int(-1))]);
    }

    #[test]
    fn pre_pgd_products_of_final_example() {
        let (a, d) = zinbiel_final();
        let p = pre_pgd_from_zinbiel(&a, &d).unwrap();
        let alpha = Poly::param("alpha").unwrap();
        let lhd = p.op("lhd").unwrap();
        let rhd = p.op("rhd").unwrap();
        for t in [lhd, rhd] {
            assert_eq!(t.get(&[0, 0, 1]), &Poly::one());
            assert_eq!(t.get(&[0, 0, 2]), &alpha);
            assert_eq!(t.get(&[0, 1, 2]), &Poly::int(2));
            assert_eq!(t.get(&[1, 0, 2]), &Poly::one());
        }
    }

    #[test]
    fn zero_structures_pass_everything() {
        let mut a = FinStructure::new(2);
        for op in OP_NAMES {
            a.zero_op(op);
        }
        for co in COOP_NAMES {
            a.zero_coop(co);
        }
        for k in StructureKind::ALL {
            assert!(check_fin_structure(*k, &a).unwrap().passed(), "{k}");
        }
        for k in CoKind::ALL {
            assert!(check_fin_coalgebra(*k, &a).unwrap().passed(), "{k}");
        }
        for k in BiKind::ALL {
            assert!(check_fin_bialgebra(*k, &a).unwrap().passed(), "{k}");
        }
    }

    #[test]
    fn missing_op_is_named() {
        let a = FinStructure::new(2);
        assert_eq!(
            check_fin_structure(StructureKind::Novikov, &a).unwrap_err(),
            FinError::MissingOp("circ".into())
        );
    }
}
