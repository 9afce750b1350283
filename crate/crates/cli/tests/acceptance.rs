//! One line per acceptance criterion. Each check is exact symbolic equality
//! (no numeric tolerance), and the wall-clock budget is printed next to the
//! measured time.
//!
//! Items marked EXPECTED-FAIL cannot hold as stated; the reason
//! is printed on the line and the test asserts that they fail exactly as
//! analysed. The target runs without the test harness so that the lines
//! are always printed.

use confalg::bridges::*;
use confalg::conformal::{
    bialgebra_double, bialgebra_double_unchecked, check_conf_structure, check_manin_triple,
    dual_conf_algebra, dual_conf_coalgebra, dual_representation_unchecked, standard_form,
    ConfAlgebra, ConfKind, ConfRep,
};
use confalg::deform::*;
use confalg::exactpoly::{Poly, Var};
use confalg::examples::{
    alpha_symbol, final_displays, final_example, polyx, polyx_displays, q_symbol, FinalVariant,
};
use confalg::findim::{check_fin_bialgebra, check_fin_coalgebra, check_fin_structure};
use confalg::findim::{BiKind, CoKind, FinStructure, StructureKind};
use confalg::report::CheckReport;
use confalg::tensor::Tensor;
use confalg::ybe::*;
use confalg_cli::commands::{self, render, Format};
use confalg_cli::{builtins, spec};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

const TOLERANCE: &str = "exact";

#[derive(Clone, Copy, PartialEq, Debug)]
enum Expect {
    Pass,
    /// Fails for the stated reason.
    Fail(&'static str),
}

struct Line {
    id: &'static str,
    passed: bool,
    expect: Expect,
    elapsed: Duration,
    budget: Duration,
}

impl Line {
    fn ok(&self) -> bool {
        let verdict = match self.expect {
            Expect::Pass => self.passed,
            Expect::Fail(_) => !self.passed,
        };
        verdict && self.elapsed <= self.budget
    }
}

fn run(
    lines: &mut Vec<Line>,
    id: &'static str,
    budget_s: u64,
    expect: Expect,
    f: impl FnOnce() -> Result<(), String>,
) {
    let t = Instant::now();
    let res = f();
    let elapsed = t.elapsed();
    let status = if res.is_ok() { "PASS" } else { "FAIL" };
    let mut msg = format!(
        "criterion {id}: {status} ({:.2} s, budget {budget_s} s, tolerance: {TOLERANCE})",
        elapsed.as_secs_f64()
    );
    if let Expect::Fail(why) = expect {
        msg.push_str(&format!(" EXPECTED-FAIL: {why}"));
    }
    if let Err(e) = &res {
        msg.push_str(&format!("\n    {}", e.lines().next().unwrap_or("")));
    }
    println!("{msg}");
    lines.push(Line {
        id,
        passed: res.is_ok(),
        expect,
        elapsed,
        budget: Duration::from_secs(budget_s),
    });
}

fn require(rep: &CheckReport) -> Result<(), String> {
    if rep.passed() {
        Ok(())
    } else {
        Err(format!(
            "{}: failing {}",
            rep.title,
            rep.failed_ids().join(", ")
        ))
    }
}

fn ensure(cond: bool, what: &str) -> Result<(), String> {
    cond.then_some(()).ok_or_else(|| what.to_string())
}

fn bundle(variant: FinalVariant) -> PipelineBundle {
    let (z, d) = final_example(&alpha_symbol(), variant);
    run_pipeline(&z, &d, false).unwrap()
}

fn rational(r: &mut ChaCha8Rng) -> Poly {
    let num: i64 = r.gen_range(1..=5);
    let sign = if r.gen_bool(0.5) { 1 } else { -1 };
    Poly::rat(sign * num, r.gen_range(1..=3))
}

fn perturbed(base: &FinStructure, r: &mut ChaCha8Rng) -> FinStructure {
    let mut a = base.clone();
    let op = *["circ", "dot", "bracket"].choose(r).unwrap();
    let n = a.dim;
    let ix = [r.gen_range(0..n), r.gen_range(0..n), r.gen_range(0..n)];
    let c = rational(r);
    a.ops.get_mut(op).unwrap().add_at(&ix, &c);
    a
}

/// Both sides of the PGD / Poisson conformal correspondence, identity
/// block by identity block. Returns whether the structure is PGD.
fn pgd_correspondence(a: &FinStructure) -> Result<bool, String> {
    let fin = check_fin_structure(StructureKind::PGD, a).map_err(|e| e.to_string())?;
    let conf_alg = pgd_to_conformal_unchecked(a).map_err(|e| e.to_string())?;
    let conf = check_conf_structure(ConfKind::PoissonConf, &conf_alg).map_err(|e| e.to_string())?;
    let all = |rep: &CheckReport, ids: &[&str]| ids.iter().all(|id| rep.get(id).unwrap().passed());
    let pairs = [
        ("commutativity(dot)", "commutativity(mul)"),
        ("associativity(dot)", "associativity(mul)"),
    ];
    for (f, c) in pairs {
        ensure(
            all(&fin, &[f]) == all(&conf, &[c]),
            &format!("{f} against {c}"),
        )?;
    }
    let gd = [
        "left-symmetry(circ)",
        "right-commutativity(circ)",
        "skew-symmetry(bracket)",
        "Jacobi(bracket)",
        "eqq3",
    ];
    let lie = ["skew-symmetry(bracket)", "Jacobi(bracket)"];
    ensure(
        all(&fin, &gd) == all(&conf, &lie),
        "GD block against the Lie block",
    )?;
    ensure(fin.passed() == conf.passed(), "overall verdicts")?;
    Ok(fin.passed())
}

fn o_operator_agrees(hat: &ConfAlgebra, r: &Tensor) -> Result<bool, String> {
    let rep = dual_representation_unchecked(&ConfRep::adjoint(hat));
    let o = o_operator_identities(hat, &rep, &r_to_conformal_map(r)).map_err(|e| e.to_string())?;
    let y = check_pcybe(hat, r).map_err(|e| e.to_string())?;
    ensure(
        o.passed() == y.passed(),
        "PCYBE and O-operator verdicts differ",
    )?;
    Ok(y.passed())
}

fn skew_perturbed(r: &Tensor, g: &mut ChaCha8Rng) -> Tensor {
    let n = r.rank;
    let i = g.gen_range(0..n);
    let j = (i + g.gen_range(1..n)) % n;
    let c = rational(g);
    let e = g.gen_range(0..2u32);
    let mut out = r.clone();
    out.add_at(&[i, j], &(&c * &Poly::var(Var::D1).pow(e)));
    out.add_at(&[j, i], &-&(&c * &Poly::var(Var::D2).pow(e)));
    out
}

fn shipped_specs() -> Vec<(String, String)> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../specs");
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).unwrap())
        })
        .collect()
}

fn main() {
    let mut lines = Vec::new();
    let published = bundle(FinalVariant::Published);
    let fixed = bundle(FinalVariant::Corrected);

    run(
        &mut lines,
        "1 final-example displays (alpha symbolic)",
        10,
        Expect::Pass,
        || {
            let b = bundle(FinalVariant::Published);
            require(&final_displays(&b, &alpha_symbol()))
        },
    );

    run(
        &mut lines,
        "2 PCYBE and coboundary conditions on P-hat",
        30,
        Expect::Pass,
        || {
            for b in [&published, &fixed] {
                require(&check_pcybe(&b.hat, &b.r).map_err(|e| e.to_string())?)?;
                let c = check_coboundary_conditions(&b.hat, &b.r).map_err(|e| e.to_string())?;
                ensure(c.identities.len() == 5, "five coboundary conditions")?;
                require(&c)?;
            }
            Ok(())
        },
    );
    run(
        &mut lines,
        "2 coboundary coproducts form a Poisson conformal bialgebra (published data)",
        30,
        Expect::Fail(
            "the published Zinbiel data is not Zinbiel, so P-hat is not Poisson conformal",
        ),
        || {
            let c = coboundary_coproducts(&published.hat, &published.r).unwrap();
            require(&check_poisson_conf_bialgebra(&published.hat, &c).unwrap())
        },
    );
    run(
        &mut lines,
        "2 coboundary coproducts form a Poisson conformal bialgebra (corrected data)",
        30,
        Expect::Pass,
        || {
            let c = coboundary_coproducts(&fixed.hat, &fixed.r).unwrap();
            require(&check_poisson_conf_bialgebra(&fixed.hat, &c).unwrap())
        },
    );

    let halves: [Vec<usize>; 2] = [(0..6).collect(), (6..12).collect()];
    run(
        &mut lines,
        "3 double, PCYBE and Manin triple (published data)",
        300,
        Expect::Fail("P-hat is not Poisson conformal, so the double fails the ambient checks"),
        || {
            let checked = bialgebra_double(&published.hat, &published.coalgebra);
            let (d, r) = bialgebra_double_unchecked(&published.hat, &published.coalgebra).unwrap();
            require(&check_pcybe(&d, &r).unwrap())?;
            let m = check_manin_triple(&d, [&halves[0], &halves[1]], &standard_form(6)).unwrap();
            ensure(
                m.failed_ids().iter().all(|id| id.starts_with("ambient: ")),
                "Manin failures outside the ambient Poisson check",
            )?;
            require(&m)?;
            checked.map(|_| ()).map_err(|e| e.to_string())
        },
    );
    run(
        &mut lines,
        "3 double, PCYBE and Manin triple (corrected data)",
        300,
        Expect::Pass,
        || {
            let (d, r) =
                bialgebra_double(&fixed.hat, &fixed.coalgebra).map_err(|e| e.to_string())?;
            ensure(d.rank == 12, "rank 12")?;
            require(&check_pcybe(&d, &r).unwrap())?;
            require(&check_manin_triple(&d, [&halves[0], &halves[1]], &standard_form(6)).unwrap())
        },
    );

    run(
        &mut lines,
        "4 polynomial example (q symbolic, window 8; q = 0 displays)",
        60,
        Expect::Pass,
        || {
            let q = q_symbol();
            let a = polyx(&q, 8);
            let mut rep = check_fin_structure(StructureKind::DiffNovikovPoisson, &a).unwrap();
            rep.merge(check_fin_coalgebra(CoKind::DiffNPCo, &a).unwrap());
            rep.merge(check_fin_bialgebra(BiKind::DiffNPBi, &a).unwrap());
            for id in [
                "DNPB1", "DNPB2", "DNPB4", "DNPC-1", "DNPC-2", "Lb5", "Lb6", "Lb7", "ASI1",
            ] {
                let r = rep.get(id).ok_or(format!("missing {id}"))?;
                ensure(r.passed(), id)?;
            }
            require(&rep)?;
            let a0 = polyx(&Poly::zero(), 8);
            let (c, co) = pgd_bialgebra_to_conf_bialgebra_unchecked(&a0).unwrap();
            require(&polyx_displays(&c, &co, &Poly::zero(), 8))
        },
    );

    run(
        &mut lines,
        "5 PGD correspondence under 24 perturbations",
        60,
        Expect::Pass,
        || {
            let base = pgd_completion(&bundle_at_one().pgd);
            ensure(pgd_correspondence(&base)?, "base structure is PGD")?;
            let mut g = ChaCha8Rng::seed_from_u64(28);
            let mut broken = 0;
            for _ in 0..24 {
                broken += usize::from(!pgd_correspondence(&perturbed(&base, &mut g))?);
            }
            ensure(
                broken >= 20,
                &format!("only {broken} perturbations broke the structure"),
            )
        },
    );
    run(
        &mut lines,
        "5 commutative square on the final example",
        10,
        Expect::Pass,
        || {
            for b in [&published, &fixed] {
                require(b.stage("commutative-square").unwrap())?;
            }
            Ok(())
        },
    );
    run(
        &mut lines,
        "5 PCYBE against O-operator on P-hat and 10 perturbations",
        60,
        Expect::Pass,
        || {
            for b in [&published, &fixed] {
                ensure(o_operator_agrees(&b.hat, &b.r)?, "canonical r solves PCYBE")?;
                let mut g = ChaCha8Rng::seed_from_u64(313);
                for _ in 0..10 {
                    o_operator_agrees(&b.hat, &skew_perturbed(&b.r, &mut g))?;
                }
            }
            Ok(())
        },
    );
    run(
        &mut lines,
        "5 conformal dual round trip on builtin algebras",
        10,
        Expect::Pass,
        || {
            let (vir, _) = virasoro_deformation(3);
            let (vir_limit, _, _) = semiclassical_limit_unchecked(&vir, &virasoro_deformation(3).1)
                .map_err(|e| e.to_string())?;
            let mut algebras = vec![vir_limit];
            for b in [&published, &fixed] {
                algebras.extend([b.poisson.clone(), b.hat.clone()]);
            }
            algebras.push(pgd_to_conformal_unchecked(&polyx(&Poly::zero(), 4)).unwrap());
            for a in &algebras {
                ensure(
                    &dual_conf_algebra(&dual_conf_coalgebra(a)) == a,
                    "round trip",
                )?;
            }
            ensure(
                dual_conf_coalgebra(&dual_conf_algebra(&fixed.coalgebra)) == fixed.coalgebra,
                "coalgebra round trip",
            )
        },
    );

    run(
        &mut lines,
        "6 Virasoro truncated deformation, order-by-order checks (N = 3)",
        5,
        Expect::Fail(
            "associativity fails at h^2 for {b_l b}_1 = (d + 2l) b with zero higher terms",
        ),
        || {
            let (d, c) = virasoro_deformation(3);
            require(&check_deformation_hypotheses(&d, &c).map_err(|e| e.to_string())?)
        },
    );
    run(
        &mut lines,
        "6 Virasoro limit bracket (2d + 4l) b is Poisson conformal",
        5,
        Expect::Pass,
        || {
            let (d, c) = virasoro_deformation(3);
            let (alg, _, _) = semiclassical_limit_unchecked(&d, &c).map_err(|e| e.to_string())?;
            let br = alg.op("bracket").map_err(|e| e.to_string())?;
            ensure(
                br.get(0, 0, 0) == &Poly::parse("2*d + 4*l", &[]).unwrap(),
                "limit bracket",
            )?;
            require(&check_conf_structure(ConfKind::PoissonConf, &alg).unwrap())
        },
    );
    run(
        &mut lines,
        "6 zero deformation limit is a Poisson conformal bialgebra",
        5,
        Expect::Pass,
        || {
            let (d, c) = zero_deformation(1, 3);
            let (_, _, rep) = semiclassical_limit(&d, &c).map_err(|e| e.to_string())?;
            require(&rep)
        },
    );
    run(
        &mut lines,
        "6 current-algebra deformation limit (N = 3)",
        5,
        Expect::Pass,
        || {
            let (d, c) = current_deformation(3);
            let (_, _, rep) = semiclassical_limit(&d, &c).map_err(|e| e.to_string())?;
            require(&rep)
        },
    );

    run(
        &mut lines,
        "7 shipped specs round trip byte-identically",
        30,
        Expect::Pass,
        || {
            let shipped = shipped_specs();
            ensure(
                shipped.len() == builtins::NAMES.len(),
                "one shipped spec per builtin",
            )?;
            for (name, src) in &shipped {
                let parsed = spec::parse_spec(src).map_err(|e| format!("{name}: {e}"))?;
                ensure(&spec::write_spec(&parsed) == src, name)?;
                let builtin = builtins::spec(name).ok_or(format!("no builtin {name}"))?;
                ensure(
                    &spec::write_spec(&builtin) == src,
                    &format!("{name} differs from builtin"),
                )?;
            }
            Ok(())
        },
    );
    run(
        &mut lines,
        "7 repeated runs give identical reports",
        60,
        Expect::Pass,
        || {
            let once = || {
                let a = commands::example_final(&alpha_symbol(), FinalVariant::Published, false)
                    .unwrap();
                let b = commands::example_polyx(&Poly::zero(), 6).unwrap();
                let c = commands::ybe(&builtins::spec("final-hat").unwrap()).unwrap();
                [&a, &b, &c]
                    .iter()
                    .flat_map(|o| [render(o, Format::Text), render(o, Format::Json)])
                    .collect::<Vec<_>>()
            };
            let first = once();
            confalg::par::set_parallel(false);
            let sequential = once();
            confalg::par::set_parallel(true);
            ensure(first == once(), "parallel runs differ")?;
            ensure(first == sequential, "parallel and sequential runs differ")
        },
    );

    let bad: Vec<&str> = lines.iter().filter(|l| !l.ok()).map(|l| l.id).collect();
    let expected_fail = lines.iter().filter(|l| l.expect != Expect::Pass).count();
    println!(
        "acceptance: {} lines, {} pass, {} expected failures, {} unexpected",
        lines.len(),
        lines.iter().filter(|l| l.passed).count(),
        expected_fail,
        bad.len()
    );
    if !bad.is_empty() {
        eprintln!("unexpected results: {bad:?}");
        std::process::exit(1);
    }
}

fn bundle_at_one() -> PipelineBundle {
    let (z, d) = final_example(&Poly::int(1), FinalVariant::Corrected);
    run_pipeline(&z, &d, false).unwrap()
}
