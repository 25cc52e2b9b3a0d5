//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the pass/fail lines always reach the console.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use orlicz_core::domain::Sampling;
use orlicz_core::inclusion::{self, HolderSetup};
use orlicz_core::norms::{luxemburg_norm, weak_luxemburg_norm};
use orlicz_core::{
    Ball, BoxRegion, Corpus, CorpusSpec, LogGrid, Outcome, QuadratureSpec, Region, SimpleFunction, Trend, Weight,
    YoungFunction,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn power(p: f64) -> YoungFunction {
    YoungFunction::power(p, 1.0).unwrap()
}

fn exp1() -> YoungFunction {
    YoungFunction::exp_power(1.0).unwrap()
}

fn q() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn volume(n: usize, r: f64) -> f64 {
    match n {
        1 => 2.0 * r,
        2 => PI * r * r,
        3 => 4.0 / 3.0 * PI * r * r * r,
        _ => unreachable!(),
    }
}

fn char_norm_oracle() -> Check {
    let phis: [(&str, f64); 5] = [("power", 1.0), ("power", 1.5), ("power", 2.0), ("power", 4.0), ("exp", 1.0)];
    let mut cases = 0;
    let mut worst = 0.0f64;
    for (kind, p) in phis {
        let phi = if kind == "power" { power(p) } else { exp1() };
        for n in 1..=3 {
            for r in [0.5, 1.0, 2.0] {
                let s = 1.0 / volume(n, r);
                let inv = if kind == "power" { s.powf(1.0 / p) } else { s.ln_1p() };
                let want = 1.0 / inv;
                let chi = SimpleFunction::indicator(Region::Ball(Ball::centered(n, r).unwrap())).unwrap();
                let got = luxemburg_norm(&chi, &phi, &Weight::ONE, q()).map_err(|e| e.to_string())?.value;
                worst = worst.max(rel(got, want));
                ensure(rel(got, want) <= 1e-9, format!("{kind} p={p} n={n} r={r}: {got} vs {want}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases, worst rel err {worst:.1e}"))
}

fn inverse_properties() -> Check {
    let r = inclusion::young_inverse_check(10_000, 42);
    ensure(r.instances == 30_000, "expected 3 checks per sample")?;
    ensure(r.passed(), format!("violation: {:?}", r.witness))?;
    Ok(format!("10000 samples, max ratio {:.12}", r.max_ratio))
}

fn phi_inclusion_pipeline() -> Check {
    let cert = inclusion::establish_precedence(&power(1.0), &exp1()).map_err(|e| e.to_string())?;
    ensure(cert.c == 1.0, format!("C = {}", cert.c))?;
    let corpus = Corpus::generate(CorpusSpec::default()).map_err(|e| e.to_string())?;
    ensure(corpus.len() == 50, "corpus size")?;
    let r = inclusion::verify_phi_inclusion(&power(1.0), &exp1(), &Weight::ONE, &cert, &corpus, q())
        .map_err(|e| e.to_string())?;
    let violations = r.records.iter().filter(|x| !x.passed).count();
    ensure(violations == 0 && r.passed(), format!("{violations} violations"))?;
    // independent recheck at 1e-9
    for f in &corpus.functions {
        let a = luxemburg_norm(f, &power(1.0), &Weight::ONE, q()).unwrap().value;
        let b = luxemburg_norm(f, &exp1(), &Weight::ONE, q()).unwrap().value;
        ensure(a <= b * (1.0 + 1e-9), format!("{a} > {b}"))?;
    }
    let refuted = power(2.0).precedes(&power(4.0), LogGrid::default_t(), &orlicz_core::grid::default_c_grid());
    match refuted.map_err(|e| e.to_string())? {
        Outcome::Refuted(ce) => ensure(ce.trend == Some(Trend::TowardZero), format!("trend {:?}", ce.trend))?,
        Outcome::Certified(c) => return Err(format!("t^2 < t^4 certified with C={}", c.c)),
    }
    Ok(format!("50 functions, max ratio {:.6}; t^2 vs t^4 refuted t->0", r.max_ratio))
}

fn weight_inclusion_pipeline() -> Check {
    let (phi, u1, u2) = (power(2.0), Weight::poly_norm(1.0).unwrap(), Weight::exp_norm(1.0).unwrap());
    let prec = inclusion::establish_precedence(&phi, &phi).map_err(|e| e.to_string())?;
    let dom = inclusion::establish_domination(&u1, &u2, Sampling::new(1)).map_err(|e| e.to_string())?;
    ensure(prec.c == 1.0 && dom.c == 1.0, format!("C1={} C2={}", prec.c, dom.c))?;
    let corpus = Corpus::generate(CorpusSpec { box_only: true, ..CorpusSpec::default() }).map_err(|e| e.to_string())?;
    let r = inclusion::verify_weight_inclusion(&phi, &phi, &u1, &u2, &prec, &dom, &corpus, q())
        .map_err(|e| e.to_string())?;
    ensure(r.passed(), format!("violation: {:?}", r.witness))?;
    ensure(r.max_ratio <= 1.0 + 1e-7, format!("max ratio {}", r.max_ratio))?;
    Ok(format!("{} box functions by quadrature, max ratio {:.6}", r.instances, r.max_ratio))
}

fn translation_bounds() -> Check {
    let f = SimpleFunction::indicator(Region::Box(BoxRegion::interval(0.0, 1.0).unwrap())).unwrap();
    let u = Weight::exp_norm(1.0).unwrap();
    let sub = inclusion::establish_submultiplicative(&u, Sampling::new(1)).map_err(|e| e.to_string())?;
    let xs = [0.0, 0.5, 1.0, 2.0, 5.0];
    let pts: Vec<Vec<f64>> = xs.iter().map(|x| vec![*x]).collect();
    let r = inclusion::translation_bounds_check(&f, &power(1.0), &u, &pts, &sub, q()).map_err(|e| e.to_string())?;
    ensure(r.passed(), format!("violation: {:?}", r.witness))?;
    let e = std::f64::consts::E;
    for (i, x) in xs.iter().enumerate() {
        let upper = &r.records[2 * i];
        // ‖T_x f‖ = ∫_x^{x+1} e^y dy and u(x)‖f‖ = e^x (e − 1)
        let want = x.exp() * (e - 1.0);
        ensure(rel(upper.lhs, want) <= 1e-6, format!("x={x}: norm {} vs {want}", upper.lhs))?;
        ensure(rel(upper.lhs, upper.rhs) <= 1e-6, format!("x={x}: upper bound not tight, ratio {}", upper.ratio))?;
    }
    Ok("5 shifts, upper bound tight to 1e-6".into())
}

fn holder() -> Check {
    let pairs = Corpus::pairs(CorpusSpec { size: 100, ..CorpusSpec::default() }).map_err(|e| e.to_string())?;
    let s = Sampling { sample_count: 2_000, ..Sampling::new(1) };
    let mut maxes = Vec::new();
    for (p1, p2) in [(2.0, 2.0), (3.0, 1.5)] {
        let setup = HolderSetup { phi: [power(p1), power(p2), power(1.0)], u: [Weight::ONE, Weight::ONE, Weight::ONE] };
        let r = inclusion::holder_check(&setup, &pairs, s, q(), Some(42)).map_err(|e| e.to_string())?;
        ensure(r.instances == 100, "expected 100 pairs")?;
        ensure(r.passed(), format!("p=({p1},{p2}) violation: {:?}", r.witness))?;
        ensure(r.max_ratio <= 2.0, format!("max ratio {}", r.max_ratio))?;
        maxes.push(r.max_ratio);
    }
    Ok(format!("2x100 pairs, max ratios {:.6} / {:.6}", maxes[0], maxes[1]))
}

fn ball_embedding() -> Check {
    let x = Ball::centered(1, 0.5).unwrap();
    let mut corpus = Corpus::inside_ball(CorpusSpec::default(), &x).map_err(|e| e.to_string())?;
    corpus.functions.push(SimpleFunction::indicator(Region::Ball(x.clone())).unwrap());
    let s = Sampling { sample_count: 2_000, ..Sampling::new(1) };
    let r = inclusion::ball_embedding_check(2.0, 1.0, &Weight::ONE, &Weight::ONE, &x, &corpus, s, q())
        .map_err(|e| e.to_string())?;
    ensure(r.passed(), format!("violation: {:?}", r.witness))?;
    let chi = r.records.last().unwrap();
    ensure(chi.constant == 2.0, format!("constant {}", chi.constant))?;
    // ‖χ_X‖₁ = ‖χ_X‖₂ = 1
    ensure((chi.lhs - 1.0).abs() <= 1e-9 && (chi.rhs - 1.0).abs() <= 1e-9, "indicator norms")?;
    let frac = chi.lhs / (chi.constant * chi.rhs);
    ensure((frac - 0.5).abs() <= 1e-9, format!("indicator uses {frac} of the bound"))?;
    Ok(format!("{} functions, indicator at {frac:.10} of the bound", r.instances))
}

fn no_inclusion() -> Check {
    let mut out = Vec::new();
    for (p1, p2) in [(1.0f64, 2.0f64), (2.0, 1.0)] {
        let w = inclusion::no_inclusion_falsifier(p1, p2, 1e6, LogGrid::new(1e-20, 1e20, 401), 1)
            .map_err(|e| e.to_string())?;
        let closed = (2.0 * w.radius).powf(1.0 / p1 - 1.0 / p2);
        ensure(closed > 1e6, format!("ratio {closed} at r={}", w.radius))?;
        ensure(rel(w.engine_ratio, closed) <= 1e-9, format!("engine {} vs {closed}", w.engine_ratio))?;
        out.push(format!("r={:.1e}", w.radius));
    }
    Ok(out.join(", "))
}

fn diagram() -> Check {
    let two = Weight::constant(2.0).unwrap();
    let prec = inclusion::establish_precedence(&power(1.0), &exp1()).map_err(|e| e.to_string())?;
    let dom = inclusion::establish_domination(&Weight::ONE, &two, Sampling::new(1)).map_err(|e| e.to_string())?;
    let corpus = Corpus::generate(CorpusSpec::default()).map_err(|e| e.to_string())?;
    let r = inclusion::strong_to_weak_check(&corpus, &power(1.0), &exp1(), &Weight::ONE, &two, &prec, &dom)
        .map_err(|e| e.to_string())?;
    ensure(r.passed(), format!("violation: {:?}", r.witness))?;
    ensure(r.instances == 5 * corpus.len(), "five arrows per member")?;
    for f in &corpus.functions {
        for (phi, u) in [(power(1.0), &Weight::ONE), (exp1(), &two)] {
            let w = weak_luxemburg_norm(f, &phi, u).unwrap().value;
            let s = luxemburg_norm(f, &phi, u, q()).unwrap().value;
            ensure(w <= s * (1.0 + 1e-9), format!("weak {w} > strong {s}"))?;
        }
    }
    Ok(format!("{} functions, 5 arrows each", corpus.len()))
}

fn strip_timestamp(text: &str) -> String {
    text.lines().filter(|l| !l.trim_start().starts_with("\"timestamp\"")).collect::<Vec<_>>().join("\n")
}

fn determinism() -> Check {
    let dir = std::env::temp_dir().join(format!("orlicz-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for i in 0..2 {
        let path = dir.join(format!("run{i}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_orlicz"))
            .args(["verify", "all", "--seed", "42", "--out"])
            .arg(&path)
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.code() == Some(0), format!("exit status {status}"))?;
        outputs.push(std::fs::read_to_string(&path).map_err(|e| e.to_string())?);
    }
    let _ = std::fs::remove_dir_all(&dir);
    let v: serde_json::Value = serde_json::from_str(&outputs[0]).map_err(|e| e.to_string())?;
    ensure(v["complete"] == true && v["verdict"] == "pass", "report incomplete or failing")?;
    ensure(v.get("timestamp").is_some(), "missing timestamp")?;
    let (a, b) = (strip_timestamp(&outputs[0]), strip_timestamp(&outputs[1]));
    ensure(a == b, "reports differ")?;
    Ok(format!("{} bytes identical", a.len()))
}

struct Criterion {
    id: usize,
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "characteristic-function norm oracle", budget: secs(5), run: char_norm_oracle },
        Criterion { id: 2, name: "generalized inverse properties", budget: secs(5), run: inverse_properties },
        Criterion { id: 3, name: "Young-function inclusion pipeline", budget: secs(20), run: phi_inclusion_pipeline },
        Criterion { id: 4, name: "weighted inclusion pipeline", budget: secs(60), run: weight_inclusion_pipeline },
        Criterion { id: 5, name: "translation bounds", budget: secs(10), run: translation_bounds },
        Criterion { id: 6, name: "Hölder inequality", budget: secs(20), run: holder },
        Criterion { id: 7, name: "ball embedding", budget: secs(10), run: ball_embedding },
        Criterion { id: 8, name: "no-inclusion falsifier", budget: secs(5), run: no_inclusion },
        Criterion { id: 9, name: "strong/weak diagram", budget: secs(20), run: diagram },
        Criterion { id: 10, name: "deterministic verify all", budget: secs(60), run: determinism },
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for c in &criteria {
        if !filter.is_empty() && !filter.iter().any(|f| c.name.contains(f.as_str()) || c.id.to_string() == *f) {
            continue;
        }
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.budget => Err(format!("{detail}; over budget {:?}", c.budget)),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {} ({:.2?}): {detail}", c.id, c.name, elapsed),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {} ({:.2?}): {why}", c.id, c.name, elapsed);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
