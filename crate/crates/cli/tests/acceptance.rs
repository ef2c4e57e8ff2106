//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

use nilclean::nilclean::NonNilCleanCertificate;
use nilclean::radical::Ideal;
use nilclean::theorem::{
    check_commutative_equivalence, check_connected_criterion, check_finite_fields, check_full_ideal_units,
    check_jstar_equals_radical, check_nil_ideal_lifting, check_non_abelian_counterexample,
    check_ring_matrix_transfer, default_corpus, matrix_ring_within_budget, Certificate, CorpusEntry,
    FINITE_FIELD_CASES, LIFT_SAMPLES, STRUCTURED_SAMPLES,
};
use nilclean::{Config, Error, Ring};

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn run_cli(args: &[&str], threads: &str) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_nilclean"))
        .args(args)
        .env("NILCLEAN_THREADS", threads)
        .output()
        .expect("spawn nilclean");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), json)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:.1?}, limit {limit:?}"))
}

fn err(e: Error) -> String {
    e.to_string()
}

fn survey_reproduction() -> Check {
    let start = Instant::now();
    let (code, v) = run_cli(&["survey", "--max-m", "16", "-n", "2"], "0");
    within(start, Duration::from_secs(120))?;
    ensure(code == 0, format!("exit {code}"))?;
    let out = &v["outputs"];
    let nil: Vec<u64> = out["nil_clean"].as_array().ok_or("no nil_clean list")?.iter().filter_map(Value::as_u64).collect();
    ensure(nil == vec![2, 4, 8, 16], format!("nil-clean set {nil:?}"))?;
    ensure(out["discrepancies"] == 0, "discrepancies reported")?;
    for row in out["rows"].as_array().ok_or("no rows")? {
        let m = row["m"].as_u64().unwrap_or(0);
        if m <= 9 {
            ensure(
                row["cross_checked"] == true && row["oracle_decision"] == row["power_of_two"],
                format!("m={m} not confirmed by the oracle"),
            )?;
        }
    }
    Ok(format!("nil-clean at {nil:?}, oracle-confirmed for m ≤ 9, {:.1?}", start.elapsed()))
}

fn cross_validation(corpus: &[CorpusEntry]) -> Check {
    let start = Instant::now();
    let (code, v) = run_cli(&["verify", "--corpus", "default", "-n", "2", "--budget", "16777216"], "0");
    within(start, Duration::from_secs(600))?;
    ensure(code == 0, format!("verify exit {code}"))?;
    let rows = v["outputs"]["cross_validation"]["rows"].as_array().ok_or("no rows")?;
    let mut compared = 0;
    for e in corpus.iter().filter(|e| e.flags.abelian) {
        let ns: &[u64] = if e.spec == "GF(2)" { &[1, 2, 3] } else { &[1, 2] };
        for &n in ns {
            let row = rows
                .iter()
                .find(|r| r["ring"] == e.spec.as_str() && r["n"] == n)
                .ok_or(format!("{} n={n} missing", e.spec))?;
            ensure(row["status"] == "agreed", format!("{} n={n}: {row}", e.spec))?;
            compared += 1;
        }
    }
    Ok(format!("{compared} abelian (ring, n) pairs agree, verify exit 0, {:.1?}", start.elapsed()))
}

fn finite_fields(cfg: &Config) -> Check {
    for &(q, n) in FINITE_FIELD_CASES {
        let r = check_finite_fields(q, n, cfg).map_err(err)?;
        ensure(r.passed, format!("M{n}(GF({q})) nil_clean={}", r.nil_clean))?;
        if q != 2 {
            ensure(r.certificate_verified == Some(true), format!("M{n}(GF({q})) certificate not re-verified"))?;
        }
    }
    Ok(format!("{} cases; negative certificates re-verified", FINITE_FIELD_CASES.len()))
}

fn square_zero_extension(cfg: &Config) -> Check {
    let t2: Ring = "triv(GF(2),2)".parse().map_err(err)?;
    let pos = check_connected_criterion(&t2, 2, STRUCTURED_SAMPLES, cfg).map_err(err)?;
    ensure(pos.passed && pos.criterion && pos.oracle_nil_clean, "triv(GF(2),2) criterion failed")?;
    ensure(pos.exponent_bound == Some(4), format!("exponent bound {:?}", pos.exponent_bound))?;
    ensure(pos.structured_verified == 1000, format!("{} structured witnesses", pos.structured_verified))?;

    let t3: Ring = "triv(GF(3),2)".parse().map_err(err)?;
    let neg = check_connected_criterion(&t3, 2, STRUCTURED_SAMPLES, cfg).map_err(err)?;
    ensure(neg.passed && !neg.oracle_nil_clean, "triv(GF(3),2) should fail on both sides")?;
    let Certificate::NonDecomposable { element, idempotents_scanned, .. } = neg.certificate else {
        return Err("triv(GF(3),2) has no element certificate".into());
    };
    let m = matrix_ring_within_budget(&t3, 2, cfg).map_err(err)?;
    let cert = NonNilCleanCertificate { target: element, idempotents_scanned };
    ensure(cert.verify(&m), "triv(GF(3),2) certificate does not re-verify")?;
    Ok(format!("1000 structured witnesses with W^4 = 0; triv(GF(3),2) certificate at index {element}"))
}

fn counterexample(cfg: &Config) -> Check {
    let s: Ring = "M2(GF(2))".parse().map_err(err)?;
    let p = check_non_abelian_counterexample(&s, cfg).map_err(err)?;
    ensure(
        p.nil_clean && p.radical_zero && !p.boolean && !p.abelian,
        format!("profile {p:?}"),
    )?;
    Ok("nil-clean, J = 0, not Boolean, not abelian".into())
}

fn jstar(corpus: &[CorpusEntry], cfg: &Config) -> Check {
    let mut count = 0;
    for e in corpus.iter().filter(|e| e.flags.abelian && e.flags.order <= 64) {
        let r = check_jstar_equals_radical(&e.ring, cfg).map_err(err)?;
        ensure(r.equal, format!("{}: J = {:?}, J* = {:?}", e.spec, r.radical, r.j_star))?;
        count += 1;
    }
    Ok(format!("J* = J on {count} abelian rings"))
}

fn full_ideals(corpus: &[CorpusEntry], cfg: &Config) -> Check {
    let mut elements = 0;
    for e in corpus.iter().filter(|e| e.flags.abelian) {
        let r = check_full_ideal_units(&e.ring, cfg).map_err(err)?;
        ensure(r.passed, format!("{}: first mismatch {:?}", e.spec, r.first_mismatch))?;
        elements += r.elements;
    }
    Ok(format!("RxR = R iff x is a unit, {elements} elements checked"))
}

fn commutative_equivalence(corpus: &[CorpusEntry], cfg: &Config) -> Check {
    let mut count = 0;
    for e in corpus.iter().filter(|e| e.flags.commutative && e.flags.order <= 16) {
        for n in [1, 2] {
            let r = check_commutative_equivalence(&e.ring, n, cfg).map_err(err)?;
            ensure(r.agree, format!("{} n={n}: {r:?}", e.spec))?;
            count += 1;
        }
    }
    Ok(format!("three conditions agree on {count} (ring, n) pairs"))
}

fn transfer(corpus: &[CorpusEntry], cfg: &Config) -> Check {
    let (mut checked, mut skipped) = (0, 0);
    for e in corpus.iter().filter(|e| e.flags.commutative) {
        match check_ring_matrix_transfer(&e.ring, cfg) {
            Ok(r) => {
                ensure(r.agree, format!("{}: {r:?}", e.spec))?;
                checked += 1;
            }
            Err(Error::BudgetExceeded { .. }) => skipped += 1,
            Err(other) => return Err(err(other)),
        }
    }
    Ok(format!("{checked} rings agree, {skipped} beyond budget"))
}

fn lifting(corpus: &[CorpusEntry], cfg: &Config) -> Check {
    let mut pairs: Vec<(String, Ring, Ideal)> = Vec::new();
    for e in corpus {
        pairs.push((format!("{} / J", e.spec), e.ring.clone(), e.radical.clone()));
        pairs.push((format!("{} / 0", e.spec), e.ring.clone(), Ideal::zero(&e.ring)));
    }
    let z12: Ring = "Z/12".parse().map_err(err)?;
    let six = Ideal::from_elements(&z12, &[0, 6]).map_err(err)?;
    pairs.push(("Z/12 / (6)".into(), z12, six));
    let mut worst = 0;
    for (label, ring, ideal) in &pairs {
        let r = check_nil_ideal_lifting(ring, ideal, LIFT_SAMPLES, cfg).map_err(err)?;
        ensure(r.passed, format!("{label}: {r:?}"))?;
        ensure(r.lifting.samples == 1000 && r.lifting.max_iterations <= r.lifting.bound, format!("{label}: bound"))?;
        worst = worst.max(r.lifting.max_iterations);
    }
    Ok(format!("{} pairs agree; at most {worst} lifting iterations, always within ⌈log₂ s⌉ + 1", pairs.len()))
}

fn determinism() -> Check {
    let args = ["decide", "--ring", "Z/6", "-n", "2", "--method", "brute"];
    let mut outputs = Vec::new();
    for threads in ["0", "0", "4", "4"] {
        let (code, mut v) = run_cli(&args, threads);
        ensure(code == 0, format!("exit {code} with NILCLEAN_THREADS={threads}"))?;
        v.as_object_mut().ok_or("not an object")?.remove("timing_ms");
        outputs.push(serde_json::to_string(&v).map_err(|e| e.to_string())?);
    }
    ensure(outputs.windows(2).all(|w| w[0] == w[1]), "outputs differ")?;
    let v: Value = serde_json::from_str(&outputs[0]).map_err(|e| e.to_string())?;
    let cert = &v["outputs"]["certificate"];
    ensure(cert["kind"] == "non_decomposable" && cert["matrix"].is_array(), "no certificate matrix")?;
    Ok(format!("4 identical runs, certificate matrix {}", cert["matrix"]))
}

fn main() {
    let cfg = Config::default();
    let corpus = default_corpus(&cfg).expect("default corpus");
    let criteria: Vec<Criterion> = vec![
        ("Z/m survey reproduction", Box::new(survey_reproduction)),
        ("structural criterion vs oracle on the corpus", Box::new(|| cross_validation(&corpus))),
        ("matrices over finite fields", Box::new(|| finite_fields(&cfg))),
        ("square-zero extensions of GF(2) and GF(3)", Box::new(|| square_zero_extension(&cfg))),
        ("non-abelian counterexample", Box::new(|| counterexample(&cfg))),
        ("J* equals J on abelian rings", Box::new(|| jstar(&corpus, &cfg))),
        ("full principal ideals are unit ideals", Box::new(|| full_ideals(&corpus, &cfg))),
        ("commutative three-way equivalence", Box::new(|| commutative_equivalence(&corpus, &cfg))),
        ("ring vs M_2 verdict transfer", Box::new(|| transfer(&corpus, &cfg))),
        ("nil-ideal lifting", Box::new(|| lifting(&corpus, &cfg))),
        ("deterministic JSON across thread counts", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
