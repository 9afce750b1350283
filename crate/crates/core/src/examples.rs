//! Builtin examples and the exact tables of their published displays.
//!
//! * `final`: a three-dimensional Zinbiel algebra with a derivation, run
//!   through the pre-PGD / pre-Poisson conformal / coboundary pipeline.
//! * `final-corrected`: the same shape with `e₁ ≻ e₂ = 2e₃` and
//!   `D(e₂) = 2e₂ + 3αe₃`, which satisfies the Zinbiel identity.
//! * `polyx`: the polynomial algebra `k[x]` with `x^m ∘ x^n = (1−q) n
//!   x^{m+n−1}` and its coproducts, truncated to a degree window.

use crate::bridges::{algebra_difference, coalgebra_difference, PipelineBundle};
use crate::conformal::{ConfAlgebra, ConfCoalgebra, Table};
use crate::exactpoly::{Poly, Var};
use crate::findim::FinStructure;
use crate::report::{run_identity, tuples, CheckReport};
use crate::tensor::Tensor;

kind_enum!(FinalVariant {
    Published => "final",
    Corrected => "final-corrected",
});

/// The Zinbiel algebra (operation `succ`) with its derivation, also stored
/// as the linear map `D`.
pub fn final_example(alpha: &Poly, variant: FinalVariant) -> (FinStructure, Tensor) {
    let one = Poly::one;
    let int = Poly::int;
    let mut a = FinStructure::new(3);
    let e12 = match variant {
        FinalVariant::Published => one(),
        FinalVariant::Corrected => int(2),
    };
    a.add_op("succ", 0, 0, 1, one());
    a.add_op("succ", 0, 1, 2, e12);
    a.add_op("succ", 1, 0, 2, one());
    let d22 = match variant {
        FinalVariant::Published => int(2),
        FinalVariant::Corrected => int(3),
    };
    let entries = [
        (0, 0, one()),
        (0, 1, alpha.clone()),
        (1, 1, int(2)),
        (1, 2, &d22 * alpha),
        (2, 2, int(3)),
    ];
    let mut d = Tensor::zeros(3, 2);
    for (i, j, p) in entries {
        a.add_linmap("D", i, j, p.clone());
        *d.get_mut(&[i, j]) = p;
    }
    (a, d)
}

/// The symbolic parameter `alpha`.
pub fn alpha_symbol() -> Poly {
    Poly::param("alpha").expect("parameter slots available")
}

/// The symbolic parameter `q`.
pub fn q_symbol() -> Poly {
    Poly::param("q").expect("parameter slots available")
}

/// `k[x]` truncated to `x⁰ … x^{3d}` with identities evaluated on
/// `x⁰ … x^d`: `x^m ∘ x^n = (1−q) n x^{m+n−1}`, `x^m · x^n = x^{m+n}`,
/// `Δ₂(x^n) = Σ_{i<n} x^{n−1−i} ⊗ x^i` and
/// `Δ₁(x^n) = (q−1) Σ_{i=1}^{n−1} i x^{n−1−i} ⊗ x^{i−1}`.
pub fn polyx(q: &Poly, degree: usize) -> FinStructure {
    let top = 3 * degree;
    let n = top + 1;
    let one_minus_q = Poly::one() - q;
    let q_minus_one = q - &Poly::one();
    let mut a = FinStructure::new(n);
    a.window = Some(degree);
    a.zero_op("circ");
    a.zero_op("dot");
    a.zero_coop("Delta1");
    a.zero_coop("Delta2");
    for m in 0..n {
        for k in 0..n - m {
            a.add_op("dot", m, k, m + k, Poly::one());
            if k >= 1 {
                a.add_op("circ", m, k, m + k - 1, &one_minus_q * &Poly::int(k as i64));
            }
        }
    }
    for k in 1..n {
        for i in 0..k {
            a.add_coop("Delta2", k, k - 1 - i, i, Poly::one());
        }
        for i in 1..k {
            a.add_coop(
                "Delta1",
                k,
                k - 1 - i,
                i - 1,
                &q_minus_one * &Poly::int(i as i64),
            );
        }
    }
    a
}

// ---------------------------------------------------------------------------
// Display tables
// ---------------------------------------------------------------------------

fn p(s: &str) -> Poly {
    Poly::parse(s, &["alpha"]).expect("display literal")
}

/// `[b_λ a] = −[a_{−λ−∂} b]` or `b_λ a = a_{−λ−∂} b` alongside `a_λ b`.
fn pair(t: &mut Table, i: usize, j: usize, k: usize, c: &Poly, sign: i64) {
    t.add_at(i, j, k, c);
    if i != j {
        let shift = -&(Poly::l() + Poly::d());
        t.add_at(
            j,
            i,
            k,
            &(&Poly::int(sign) * &c.substitute(Var::LAMBDA, &shift)),
        );
    }
}

fn with_alpha(c: Poly, alpha: &Poly) -> Poly {
    let v = Var::lookup_param("alpha").expect("alpha registered");
    c.substitute(v, alpha)
}

/// The displayed pre-differential Novikov-Poisson products.
pub fn final_pre_pgd_display(alpha: &Poly) -> FinStructure {
    let mut a = FinStructure::new(3);
    for op in ["lhd", "rhd"] {
        a.add_op(op, 0, 0, 1, Poly::one());
        a.add_op(op, 0, 0, 2, alpha.clone());
        a.add_op(op, 0, 1, 2, Poly::int(2));
        a.add_op(op, 1, 0, 2, Poly::one());
    }
    a.add_op("succ", 0, 0, 1, Poly::one());
    a.add_op("succ", 0, 1, 2, Poly::one());
    a.add_op("succ", 1, 0, 2, Poly::one());
    a.zero_op("diamond");
    a
}

/// The displayed pre-Poisson conformal λ-products.
pub fn final_pre_conf_display(alpha: &Poly) -> ConfAlgebra {
    let mut a = ConfAlgebra::new(3);
    a.add("circ", 0, 0, 1, p("d + 2*l"));
    a.add("circ", 0, 0, 2, with_alpha(p("alpha*(d + 2*l)"), alpha));
    a.add("circ", 0, 1, 2, p("d + 3*l"));
    a.add("circ", 1, 0, 2, p("2*d + 3*l"));
    a.add("succ", 0, 0, 1, Poly::one());
    a.add("succ", 0, 1, 2, Poly::one());
    a.add("succ", 1, 0, 2, Poly::one());
    a
}

fn eqq_tables(alpha: &Poly, n: usize) -> (Table, Table) {
    let mut br = Table::square(n);
    br.add_at(0, 0, 1, &p("2*(d + 2*l)"));
    br.add_at(0, 0, 2, &with_alpha(p("2*alpha*(d + 2*l)"), alpha));
    pair(&mut br, 0, 1, 2, &p("2*(d + 3*l)"), -1);
    let mut mul = Table::square(n);
    mul.add_at(0, 0, 1, &Poly::int(2));
    pair(&mut mul, 0, 1, 2, &Poly::int(2), 1);
    (br, mul)
}

/// The displayed associated Poisson conformal algebra.
pub fn final_poisson_display(alpha: &Poly) -> ConfAlgebra {
    let (br, mul) = eqq_tables(alpha, 3);
    let mut a = ConfAlgebra::new(3);
    a.ops.insert("bracket".into(), br);
    a.ops.insert("mul".into(), mul);
    a
}

/// The displayed semidirect product `P̂` (duals `e_i*` at index `2 + i`).
pub fn final_hat_display(alpha: &Poly) -> ConfAlgebra {
    let (mut br, mut mul) = eqq_tables(alpha, 6);
    pair(&mut br, 0, 4, 3, &p("d - l"), -1);
    pair(&mut br, 0, 5, 3, &with_alpha(p("alpha*(d - l)"), alpha), -1);
    pair(&mut br, 0, 5, 4, &p("d - 2*l"), -1);
    pair(&mut br, 1, 5, 3, &p("2*d - l"), -1);
    pair(&mut mul, 0, 4, 3, &Poly::one(), 1);
    pair(&mut mul, 0, 5, 4, &Poly::one(), 1);
    pair(&mut mul, 1, 5, 3, &Poly::one(), 1);
    let mut a = ConfAlgebra::new(6);
    a.ops.insert("bracket".into(), br);
    a.ops.insert("mul".into(), mul);
    a
}

/// `c (∂e_x ⊗ e_y − e_y ⊗ ∂e_x)` added to `δ(e_m)`.
fn anti(c: &mut ConfCoalgebra, m: usize, coef: &Poly, x: usize, y: usize) {
    c.add("delta", m, x, y, coef * &Poly::var(Var::D1));
    c.add("delta", m, y, x, -&(coef * &Poly::var(Var::D2)));
}

/// The displayed coboundary `δ` and `Δ` on `P̂`.
pub fn final_coalgebra_display(alpha: &Poly) -> ConfCoalgebra {
    let (e1, e2, e3, f1, f2, f3) = (0, 1, 2, 3, 4, 5);
    let a = alpha.clone();
    let int = Poly::int;
    let mut c = ConfCoalgebra::new(6);
    c.zero_coop("delta");
    c.zero_coop("Delta");
    anti(&mut c, e1, &int(-1), e2, f1);
    anti(&mut c, e1, &-&a, e3, f1);
    anti(&mut c, e1, &int(-2), e3, f2);
    anti(&mut c, e1, &int(2), f1, e2);
    anti(&mut c, e1, &(&int(2) * &a), f1, e3);
    anti(&mut c, e1, &int(3), f2, e3);
    anti(&mut c, e2, &int(-1), e3, f1);
    anti(&mut c, e2, &int(3), f1, e3);
    anti(&mut c, f2, &int(-2), f1, f1);
    anti(&mut c, f3, &int(-4), f1, f2);
    anti(&mut c, f3, &int(-2), f2, f1);
    anti(&mut c, f3, &(&int(-2) * &a), f1, f1);
    for (m, x, y, k) in [
        (e1, f1, e2, -1),
        (e1, e2, f1, -1),
        (e1, f2, e3, -1),
        (e1, e3, f2, -1),
        (e2, f1, e3, -1),
        (e2, e3, f1, -1),
        (f2, f1, f1, -2),
        (f3, f1, f2, -2),
        (f3, f2, f1, -2),
    ] {
        c.add("Delta", m, x, y, int(k));
    }
    c
}

fn fin_difference(title: &str, a: &FinStructure, b: &FinStructure, ops: &[&str]) -> CheckReport {
    let mut rep = CheckReport::new(title);
    let n = a.dim;
    let zero = Tensor::zeros(n, 3);
    let ts = tuples(n, 2);
    for op in ops {
        let x = a.ops.get(*op).unwrap_or(&zero);
        let y = b.ops.get(*op).unwrap_or(&zero);
        rep.push(run_identity(&format!("equal({op})"), &ts, |t| {
            (0..n)
                .filter_map(|k| {
                    let d = x.get(&[t[0], t[1], k]) - y.get(&[t[0], t[1], k]);
                    (!d.is_zero()).then(|| (vec![k], d))
                })
                .collect()
        }));
    }
    rep
}

fn prefixed(prefix: &str, mut rep: CheckReport) -> CheckReport {
    for r in &mut rep.identities {
        r.id = format!("{prefix}: {}", r.id);
    }
    rep
}

/// Exact comparison of every intermediate of `b` with the published
/// tables of the final example.
pub fn final_displays(b: &PipelineBundle, alpha: &Poly) -> CheckReport {
    let mut rep = CheckReport::new("final-example-displays");
    rep.merge(prefixed(
        "pre-diff-np products",
        fin_difference(
            "",
            &b.pre_pgd,
            &final_pre_pgd_display(alpha),
            &["lhd", "rhd", "succ", "diamond"],
        ),
    ));
    rep.merge(prefixed(
        "pre-poisson conformal",
        algebra_difference("", &b.pre_conf, &final_pre_conf_display(alpha)),
    ));
    rep.merge(prefixed(
        "eqq1-eqq2",
        algebra_difference("", &b.poisson, &final_poisson_display(alpha)),
    ));
    rep.merge(prefixed(
        "semidirect",
        algebra_difference("", &b.hat, &final_hat_display(alpha)),
    ));
    rep.merge(prefixed(
        "coboundary coproducts",
        coalgebra_difference("", &b.coalgebra, &final_coalgebra_display(alpha)),
    ));
    rep
}

/// The displayed conformal bialgebra of `polyx` on the window, with the
/// factor `1 − q` carried by `∘` and `Δ₁` applied to the `∂`, `λ` part of
/// the bracket and to `δ`; at `q = 0` these are the published formulas.
pub fn polyx_displays(a: &ConfAlgebra, c: &ConfCoalgebra, q: &Poly, degree: usize) -> CheckReport {
    let n = a.rank;
    let f = Poly::one() - q;
    let (br, mul) = (a.op("bracket"), a.op("mul"));
    let mut rep = CheckReport::new("polyx-displays");
    let win: Vec<Vec<usize>> = tuples(degree + 1, 2);
    let (Ok(br), Ok(mul)) = (br, mul) else {
        rep.note("missing bracket or mul");
        return rep;
    };
    rep.push(run_identity("bracket", &win, |t| {
        let (m, k) = (t[0], t[1]);
        let mut out = Vec::new();
        for o in 0..n {
            let mut want = Poly::zero();
            if m + k >= 1 && o == m + k - 1 {
                want = &f
                    * &(&Poly::int(m as i64) * &Poly::d()
                        + &Poly::int((m + k) as i64) * &Poly::l());
            }
            let d = br.get(m, k, o) - &want;
            if !d.is_zero() {
                out.push((vec![o], d));
            }
        }
        out
    }));
    rep.push(run_identity("mul", &win, |t| {
        let mut out = Vec::new();
        for o in 0..n {
            let want = if o == t[0] + t[1] {
                Poly::one()
            } else {
                Poly::zero()
            };
            let d = mul.get(t[0], t[1], o) - &want;
            if !d.is_zero() {
                out.push((vec![o], d));
            }
        }
        out
    }));
    let all = tuples(n, 1);
    let (Ok(delta), Ok(cd)) = (c.coop("delta"), c.coop("Delta")) else {
        rep.note("missing delta or Delta");
        return rep;
    };
    rep.push(run_identity("delta", &all, |t| {
        let k = t[0];
        let mut want = Tensor::zeros(n, 2);
        for i in 1..k {
            let coef = &f * &Poly::int(-(i as i64));
            want.add_at(&[k - 1 - i, i - 1], &(&coef * &Poly::var(Var::D1)));
            want.add_at(&[i - 1, k - 1 - i], &-&(&coef * &Poly::var(Var::D2)));
        }
        diff2(delta, k, &want)
    }));
    rep.push(run_identity("Delta", &all, |t| {
        let k = t[0];
        let mut want = Tensor::zeros(n, 2);
        for i in 0..k {
            want.add_at(&[k - 1 - i, i], &Poly::one());
        }
        diff2(cd, k, &want)
    }));
    if !q.is_zero() {
        rep.note("the published display omits the factor 1 - q; compared with it included");
    }
    rep
}

fn diff2(q: &Tensor, k: usize, want: &Tensor) -> Vec<(Vec<usize>, Poly)> {
    let n = q.rank;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let d = q.get(&[k, i, j]) - want.get(&[i, j]);
            if !d.is_zero() {
                out.push((vec![i, j], d));
            }
        }
    }
    out
}
