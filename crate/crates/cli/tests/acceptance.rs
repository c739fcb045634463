//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use koszulres_core::resolution::SIGN_FLIPS;
use koszulres_core::{
    corpus, oracle_betti, Analysis, Field, GradedQuotientRing, KoszulComplex, Rational,
};
use serde_json::{json, Value};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn cli(args: &[&str]) -> (i32, Value, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_koszulres"))
        .arg("--json")
        .args(args)
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), v, elapsed)
}

fn expect(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn val<'a>(v: &'a Value, path: &str) -> &'a Value {
    v.pointer(path).unwrap_or(&Value::Null)
}

/// Coefficients of `Π (1 + c t)^e` through `t⁵`.
fn series_product(factors: &[(i64, u32)]) -> Vec<i64> {
    let mut s = vec![1i64, 0, 0, 0, 0, 0];
    for &(c, e) in factors {
        for _ in 0..e {
            for k in (1..6).rev() {
                s[k] += c * s[k - 1];
            }
        }
    }
    s
}

fn criterion1() -> Outcome {
    let (code, v, t) = cli(&["invariants", "corpus:flagship"]);
    expect(code == 0, format!("exit code {code}"))?;
    let got = json!([
        val(&v, "/homology/ranks/value"),
        val(&v, "/homology/q11/value"),
        val(&v, "/homology/q12/value"),
        val(&v, "/homology/q13/value"),
        val(&v, "/homology/q22/value"),
        val(&v, "/homology/a/value"),
        val(&v, "/homology/b/value"),
        val(&v, "/invariants/defect/value"),
    ]);
    let want = json!([[7, 15, 14, 5], 7, 10, 0, 2, 3, 0, [0, 0, 0, 7, 45, 221]]);
    expect(got == want, format!("got {got}"))?;
    expect(t < Duration::from_secs(60), format!("took {t:?}"))?;
    Ok(format!(
        "a=(7,15,14,5) q=(7,10,0,2) a=3 b=0 P=(0,0,0,7,45,221) in {:.2}s",
        t.as_secs_f64()
    ))
}

fn criterion2() -> Outcome {
    let (code, v, t) = cli(&["resolution", "--verify", "corpus:flagship"]);
    expect(code == 0, format!("exit code {code}"))?;
    let ver = val(&v, "/resolution/verification");
    for key in ["complex", "exact", "augmentation", "minimal"] {
        expect(ver[key] == true, format!("{key} check failed"))?;
    }
    expect(ver["truncated"] == false, "exactness truncated")?;
    let ranks = json!([1, 4, 13, 40, 121, 364]);
    expect(
        *val(&v, "/resolution/ranks/value") == ranks,
        "resolution ranks",
    )?;
    expect(
        *val(&v, "/oracle/betti/value") == ranks,
        "oracle Betti numbers",
    )?;
    expect(
        *val(&v, "/oracle/matches_resolution") == true,
        "graded oracle comparison",
    )?;
    expect(t < Duration::from_secs(300), format!("took {t:?}"))?;
    Ok(format!(
        "ranks (1,4,13,40,121,364), complex/exact/minimal, oracle agrees, in {:.2}s",
        t.as_secs_f64()
    ))
}

fn criterion3() -> Outcome {
    let denominator = json!(series_product(&[(-1, 1), (-3, 1), (1, 4)]));
    for i in 1..=4u64 {
        let (code, v, _) = cli(&["invariants", &format!("corpus:yoshino{i}")]);
        expect(code == 0, format!("I{i}: exit code {code}"))?;
        let ranks = val(&v, "/homology/ranks/value");
        let got = json!([
            ranks[0],
            ranks[3],
            ranks[1],
            val(&v, "/homology/q11/value"),
            val(&v, "/homology/q12/value"),
            val(&v, "/homology/a/value"),
            val(&v, "/homology/b/value"),
        ]);
        expect(
            got == json!([7, 3, 10 + i, 2 + i, 8, 3, 0]),
            format!("I{i}: got {got}"),
        )?;
        expect(
            *val(&v, "/invariants/denominator/value") == denominator,
            format!("I{i}: denominator"),
        )?;
    }
    Ok("I1..I4 invariants and denominator (1-t)(1-3t)(1+t)^4".into())
}

fn criterion4() -> Outcome {
    for i in 1..=2u64 {
        let (code, v, _) = cli(&["invariants", &format!("corpus:roos{i}")]);
        expect(code == 0, format!("J{i}: exit code {code}"))?;
        expect(
            *val(&v, "/homology/ranks/value") == json!([6, 10 + i, 7 + i, 2]),
            format!("J{i}: ranks"),
        )?;
        for q in ["q11", "q12", "q13", "q22", "b"] {
            expect(
                *val(&v, &format!("/homology/{q}/value")) == 0,
                format!("J{i}: {q} nonzero"),
            )?;
        }
        expect(*val(&v, "/homology/a/value") == 1, format!("J{i}: a"))?;
        expect(
            val(&v, "/invariants/defect/value")[5] == 1,
            format!("J{i}: P5"),
        )?;
        let (code, m, _) = cli(&["massey", &format!("corpus:roos{i}")]);
        expect(code == 0, format!("J{i}: massey exit code {code}"))?;
        expect(
            *val(&m, "/massey/span_rank/value") == 1,
            format!("J{i}: Massey span rank"),
        )?;
    }
    Ok("J1, J2: a=(6,10+i,7+i,2), q=0, b=0, a=1, span rank 1, P5=1".into())
}

fn criterion5() -> Outcome {
    let (code, v, _) = cli(&["invariants", "corpus:golod-plane"]);
    expect(code == 0, format!("exit code {code}"))?;
    expect(
        *val(&v, "/invariants/defect/value") == json!([0, 0, 0, 0, 0, 0]),
        "plane defect",
    )?;
    let (code, v, _) = cli(&["oracle-betti", "corpus:golod-plane", "5"]);
    expect(code == 0, format!("exit code {code}"))?;
    expect(
        *val(&v, "/oracle/betti/value") == json!([1, 2, 4, 8, 16, 32]),
        "plane oracle",
    )?;

    let (code, v, _) = cli(&["invariants", "corpus:dual-numbers"]);
    expect(code == 0, format!("exit code {code}"))?;
    expect(
        *val(&v, "/invariants/betti/value") == json!([1, 1, 1, 1, 1, 1]),
        "dual numbers Betti",
    )?;
    expect(
        *val(&v, "/invariants/deviations/value") == json!([1, 1, 0, 0, 0]),
        "dual numbers deviations",
    )?;
    let (code, v, _) = cli(&["oracle-betti", "corpus:dual-numbers", "5"]);
    expect(code == 0, format!("exit code {code}"))?;
    expect(
        *val(&v, "/oracle/betti/value") == json!([1, 1, 1, 1, 1, 1]),
        "dual numbers oracle",
    )?;
    Ok("plane: P=0, beta=(1,2,4,8,16,32); dual numbers: beta=1, eps=(1,1,0,0,0)".into())
}

fn extra_rings() -> Vec<(&'static str, Arc<GradedQuotientRing<Rational>>)> {
    let build = |vars: &[&str], gens: &[&str]| {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let gens = gens
            .iter()
            .map(|g| koszulres_core::polyring::parse_polynomial(g, &vars, &()).expect("polynomial"))
            .collect();
        Arc::new(GradedQuotientRing::new(vars, gens, None, &()).expect("ring"))
    };
    vec![
        ("ci-xyz", build(&["x", "y", "z"], &["x^2", "y^2", "z^2"])),
        (
            "codepth3",
            build(&["x", "y", "z"], &["x^2", "y^2", "z^2", "x*y"]),
        ),
        (
            "gorenstein3",
            build(
                &["x", "y", "z"],
                &["x^2 - y^2", "y^2 - z^2", "x*y", "x*z", "y*z"],
            ),
        ),
        ("cubic", build(&["x", "y"], &["x^3", "y^3", "x^2*y"])),
    ]
}

/// `∂∘∂ = 0` on every basis element `T_S · g` of the Koszul complex whose
/// image stays within the modeled degrees.
fn koszul_square_zero<F: Field>(ring: &Arc<GradedQuotientRing<F>>) -> bool {
    let k = KoszulComplex::new(ring.clone());
    (2..=k.n()).all(|i| {
        k.subsets(i).iter().all(|&s| {
            (0..ring.basis_len())
                .filter(|&g| ring.degree_of(g) + 2 <= ring.cutoff())
                .all(|g| {
                    let d = k.differential_of_basis(s, g).expect("differential");
                    k.differential(&d).expect("differential").is_zero()
                })
        })
    })
}

fn criterion6() -> Outcome {
    let mut rings: Vec<(String, Arc<GradedQuotientRing<Rational>>, Option<usize>)> = Vec::new();
    for e in corpus::CORPUS.iter() {
        let def = corpus::definition(e.name).map_err(|err| err.to_string())?;
        let ring = def
            .build::<Rational>(&(), None)
            .map_err(|err| err.to_string())?;
        rings.push((e.name.to_string(), Arc::new(ring), def.depth));
    }
    rings.extend(
        extra_rings()
            .into_iter()
            .map(|(n, r)| (n.to_string(), r, None)),
    );
    let mut codepth3_checked = 0;
    for (name, ring, depth) in &rings {
        let fail = |what: &str| format!("{name}: {what}");
        expect(
            koszul_square_zero(ring),
            fail("d∘d ≠ 0 in the Koszul complex"),
        )?;
        let an = Analysis::run(ring.clone(), *depth).map_err(|e| fail(&e.to_string()))?;
        let c = &an.algebra.checks;
        expect(c.graded_commutative, fail("graded commutativity"))?;
        expect(c.independence_p1, fail("independence of the p1 family"))?;
        expect(c.b_routes_agree, fail("b from coker psi vs kernel route"))?;
        expect(c.b_count, fail("|B| count"))?;
        expect(c.all(), fail("structure checks"))?;
        let inv = &an.invariants;
        expect(inv.deviations_agree, fail("deviations two-route agreement"))?;
        expect(inv.round_trip, fail("denominator round trip"))?;
        expect(inv.defect_consistent, fail("defect consistency"))?;
        expect(inv.codepth3 != Some(false), fail("codepth-3 division"))?;
        codepth3_checked += usize::from(inv.codepth3 == Some(true));

        let f = an.resolution();
        let v = f.verify().map_err(|e| fail(&e.to_string()))?;
        expect(v.ok(), fail("resolution verification"))?;
        let betti: Vec<usize> = inv.betti.iter().map(|&b| b as usize).collect();
        expect(f.ranks() == betti, fail("betti_formula vs rank F"))?;
        let o = oracle_betti(ring.as_ref(), 5).map_err(|e| fail(&e.to_string()))?;
        expect(o.agrees_with(&f.graded_ranks()), fail("rank F vs oracle"))?;
        if !o.truncated {
            expect(o.totals() == betti, fail("betti_formula vs oracle"))?;
        }
    }
    expect(
        codepth3_checked > 0,
        "no ring exercised the codepth-3 division check",
    )?;
    Ok(format!(
        "{} rings, codepth-3 division applied to {codepth3_checked}",
        rings.len()
    ))
}

fn criterion7() -> Outcome {
    let mut caught = Vec::new();
    for fault in SIGN_FLIPS.iter() {
        let spec = fault.to_string();
        let (code, v, _) = cli(&[
            "--inject-fault",
            &spec,
            "resolution",
            "--verify",
            "corpus:flagship",
        ]);
        let ver = val(&v, "/resolution/verification");
        expect(code == 2, format!("{spec}: exit code {code}"))?;
        expect(
            ver["complex"] == false || ver["exact"] == false,
            format!("{spec}: not caught by complex/exactness"),
        )?;
        caught.push(spec);
    }
    Ok(format!("exit 2 for {}", caught.join(", ")))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("flagship engine invariants", criterion1),
        ("flagship resolution and oracle", criterion2),
        ("Yoshino rings", criterion3),
        ("Roos rings", criterion4),
        ("Golod sanity", criterion5),
        ("property suites", criterion6),
        ("fault injection", criterion7),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("[PASS] {}. {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
