//! Acceptance run: one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use multicox::basis::{build_basis, BasisRequest, BasisResult};
use multicox::certify::{free_module_dimension, graded_dimension, hodge_equality_check};
use multicox::connection::CoxeterSystem;
use multicox::group::{CoxeterType, Multiplicity};
use multicox::suites::{hodge_window, run_suite, Suite};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const GROUPS: [&str; 6] = ["A1", "A2", "A3", "B2", "B3", "G2"];

fn system(t: &str) -> CoxeterSystem {
    CoxeterSystem::new(t.parse::<CoxeterType>().unwrap()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Build for constant base multiplicity and check everything the certificate claims.
fn build_checked(sys: &CoxeterSystem, base: u32, k: u32) -> Result<BasisResult, String> {
    let m = Multiplicity::constant(&sys.arrangement, base);
    let req = BasisRequest::automatic(sys, m, k).map_err(|e| e.to_string())?;
    let res = build_basis(sys, &req).map_err(|e| format!("{} m~={base} k={k}: {e}", sys.kind()))?;
    let h = sys.coxeter_number();
    for (b, d) in res.base.iter().zip(&res.degrees) {
        ensure(b.degree().map(|bd| bd + k * h) == *d, || {
            format!("{} degree law broken", sys.kind())
        })?;
    }
    let expected = 2 * k * sys.arrangement.len() as u32 + base * sys.arrangement.len() as u32;
    ensure(res.degree_sum == Some(expected), || {
        format!(
            "{} m~={base} k={k}: degree sum {:?} != {expected}",
            sys.kind(),
            res.degree_sum
        )
    })?;
    let target = sys.arrangement.power_product(&req.target_multiplicity());
    let q = res
        .certificate
        .determinant
        .exact_div(&target)
        .map_err(|e| e.to_string())?;
    ensure(q.as_constant().is_some_and(|c| !c.is_zero()), || {
        format!("{} m~={base} k={k}: determinant is not c*prod alpha^m", sys.kind())
    })?;
    Ok(res)
}

fn structure() -> Outcome {
    let start = Instant::now();
    for t in GROUPS {
        let sys = system(t);
        let n = sys.rank();
        let h = sys.coxeter_number();
        ensure(2 * sys.arrangement.len() == h as usize * n, || {
            format!("{t}: |A| != hl/2")
        })?;
        let degs = sys.invariants.degrees();
        ensure(n < 2 || degs[n - 2] < h, || format!("{t}: d_(l-1) >= h"))?;
        let c = sys.invariants.jacobian_scalar();
        let q = sys.arrangement.defining_polynomial();
        ensure(!c.is_zero() && *sys.invariants.jacobian() == q.scale(c), || {
            format!("{t}: J != cQ")
        })?;
    }
    let el = start.elapsed();
    ensure(el < Duration::from_secs(30), || format!("took {el:?}"))?;
    Ok(format!("6 groups in {el:.2?}"))
}

fn basis_reproduction() -> Outcome {
    let mut slowest = Duration::ZERO;
    let mut runs = 0;
    for t in GROUPS {
        let sys = system(t);
        for base in [0, 1] {
            for k in [1, 2] {
                let start = Instant::now();
                build_checked(&sys, base, k)?;
                let el = start.elapsed();
                ensure(el < Duration::from_secs(60), || {
                    format!("{t} m~={base} k={k} took {el:?}")
                })?;
                slowest = slowest.max(el);
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} builds certified, slowest {slowest:.2?}"))
}

fn constant_multiplicities() -> Outcome {
    for t in ["A2", "B2"] {
        let sys = system(t);
        for m in 2..=5u32 {
            let res = build_checked(&sys, m % 2, m / 2)?;
            ensure(res.certificate.multiplicity.iter().all(|&v| v == m), || {
                format!("{t}: wrong target for m={m}")
            })?;
        }
    }
    Ok("D^m free for m = 2..5 on A2, B2".into())
}

fn suite_on(groups: &[&str], suite: Suite, samples: usize) -> Result<usize, String> {
    let mut total = 0;
    for t in groups {
        let rep = run_suite(suite, &system(t), samples, 2024).map_err(|e| e.to_string())?;
        ensure(rep.ok() && rep.cases.len() >= samples, || {
            let bad: Vec<_> = rep.cases.iter().filter(|c| !c.pass).map(|c| c.detail.clone()).collect();
            format!("{t} {suite}: {}/{} pass {bad:?}", rep.passed, rep.cases.len())
        })?;
        total += rep.passed;
    }
    Ok(total)
}

fn contact_shift() -> Outcome {
    let n = suite_on(&["A1", "A2", "B2"], Suite::Shift, 20)?;
    Ok(format!("{n}/{n} samples shift by exactly 2"))
}

fn lowering_lemma() -> Outcome {
    let n = suite_on(&["A2"], Suite::Rel, 10)?;
    Ok(format!("{n} polynomial invariant images in D^1"))
}

fn hodge_window_check() -> Outcome {
    let a1 = system("A1");
    let rep = hodge_equality_check(1, 0..=5, &a1).map_err(|e| e.to_string())?;
    ensure(rep.agree, || format!("A1: {:?}", rep.rows))?;
    let a2 = system("A2");
    let rep = hodge_equality_check(1, hodge_window(&a2, 1), &a2).map_err(|e| e.to_string())?;
    ensure(rep.agree, || format!("A2: {:?}", rep.rows))?;
    let pieces: Vec<_> = rep.rows.iter().filter(|r| r.kernel_dim > 0).collect();
    ensure(pieces.len() >= 2, || {
        "A2: fewer than two graded pieces in window".into()
    })?;
    ensure(pieces[0].degree == a2.coxeter_number() + 1, || {
        "A2: lowest piece not at h+1".into()
    })?;
    Ok(format!(
        "A1 degrees 0..5, A2 degrees {}, {}",
        pieces[0].degree, pieces[1].degree
    ))
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0;
    for t in ["A2", "B2"] {
        let sys = system(t);
        for base in [0, 1] {
            for k in [1, 2] {
                let res = build_checked(&sys, base, k)?;
                let degs: Vec<u32> = res.degrees.iter().map(|d| d.unwrap()).collect();
                let target = Multiplicity::constant(&sys.arrangement, base + 2 * k);
                let top = degs.iter().max().unwrap() + 2;
                for d in 0..=top {
                    let got = graded_dimension(&target, d, &sys.arrangement).map_err(|e| e.to_string())?;
                    let want = free_module_dimension(sys.rank(), &degs, d);
                    ensure(got == want, || {
                        format!("{t} m={}: degree {d} has {got}, predicted {want}", base + 2 * k)
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} graded pieces match"))
}

fn one_orbit_multiplicity() -> Outcome {
    let sys = system("B2");
    let m = Multiplicity::per_orbit(&sys.arrangement, &[1, 0]).unwrap();
    let req = BasisRequest::automatic(&sys, m, 1).map_err(|e| e.to_string())?;
    let res = build_basis(&sys, &req).map_err(|e| e.to_string())?;
    ensure(req.base_multiplicity.total() == 2, || "sum m~ != 2".into())?;
    ensure(res.degree_sum == Some(2 * 4 + 2), || {
        format!("degree sum {:?}", res.degree_sum)
    })?;
    ensure(res.certificate.verdict.is_free(), || "not free".into())?;
    Ok(format!(
        "base degrees {:?}, members {:?}",
        res.base.iter().map(|b| b.degree()).collect::<Vec<_>>(),
        res.degrees
    ))
}

fn euler_identities() -> Outcome {
    let n = suite_on(&GROUPS, Suite::Euler, 20)?;
    Ok(format!("{n} samples over 6 groups"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("structure", structure),
        ("basis reproduction", basis_reproduction),
        ("constant multiplicities 2..5", constant_multiplicities),
        ("contact order shift", contact_shift),
        ("lowering by d/dP_i", lowering_lemma),
        ("hodge window", hodge_window_check),
        ("oracle equivalence", oracle_equivalence),
        ("one-orbit multiplicity", one_orbit_multiplicity),
        ("euler identities", euler_identities),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("PASS {} {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name}: {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
