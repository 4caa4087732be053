mod common;

use std::process::ExitCode;

use ssforge::analysis::{self, ShiftMethod};
use ssforge::oracle;
use ssforge::picard;
use ssforge::presets::{self, PresetId};
use ssforge::verify::{self, Status};
use ssforge::RingContext;

type Outcome = Result<String, String>;

fn ctx(n: u32) -> RingContext {
    RingContext::new(n).unwrap()
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn check(c: verify::Check) -> Result<(), String> {
    match c.status {
        Status::Pass => Ok(()),
        _ => Err(format!("check {} ({}): {:?} {}", c.id, c.name, c.status, c.detail)),
    }
}

fn picard_orders() -> Outcome {
    let totals = [8u64, 16, 32, 64];
    let filts: [&[i64]; 4] = [&[0, 1, 3], &[0, 1, 3, 7], &[0, 1, 3, 7, 15], &[0, 1, 3, 7, 15, 31]];
    let groups = ["Z/8", "Z/16", "Z/32", "Z/64"];
    for n in 1..=4u32 {
        let i = n as usize - 1;
        let r = picard::assemble_picard(&ctx(n)).map_err(|e| e.to_string())?;
        expect(&format!("n={n} total order"), r.total_order, totals[i])?;
        expect(&format!("n={n} group"), r.group.as_str(), groups[i])?;
        expect(&format!("n={n} lower bound"), r.lower_bound, totals[i])?;
        expect(&format!("n={n} filtrations"), r.orders.keys().copied().collect::<Vec<_>>(), filts[i].to_vec())?;
        expect(&format!("n={n} factor orders"), r.orders.values().all(|e| e.order == 2), true)?;
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("pic.json");
    let code = ssforge::cli::run(["ssforge", "picard", "--height", "1", "--out", out.to_str().unwrap()]);
    expect("picard --height 1 exit code", code, 0)?;
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    expect("picard --height 1 total_order", v["total_order"].as_u64(), Some(8))?;
    Ok("orders 8, 16, 32, 64 at n = 1..4; CLI total_order 8".into())
}

fn gap() -> Outcome {
    let residues = [5i64, 13, 29, 61];
    for n in 1..=4u32 {
        let g = analysis::find_gap(&ctx(n)).map_err(|e| e.to_string())?;
        expect(&format!("n={n} gap residues"), g.residues, vec![residues[n as usize - 1]])?;
        expect(&format!("n={n} period"), g.period, 1 << (n + 2))?;
    }
    Ok("unique gap at -3 mod 8, 16, 32, 64".into())
}

fn periodicity() -> Outcome {
    for n in 1..=4u32 {
        check(verify::check_periodicity(&ctx(n)))?;
    }
    Ok("minimal periods 8, 16, 32, 64; periodicity class permanent".into())
}

fn figures() -> Outcome {
    let c = ctx(2);
    check(verify::check_figures(&c))?;
    let (w, _) = verify::einf_n2_golden().map_err(|e| e.to_string())?;
    let einf = presets::build(PresetId::HfpssEn, &c, w).and_then(|s| s.einf()).map_err(|e| e.to_string())?;
    let cells = verify::cell_triples(&einf);
    let want: Vec<(i64, i64, String)> = [
        (0, 0, "WITT({1})"),
        (1, 1, "MOD2({};{1})"),
        (2, 2, "MOD2({};{1})"),
        (3, 3, "MOD2({};{})"),
        (4, 0, "WITT({1})"),
        (4, 4, "MOD2({};{})"),
        (5, 5, "MOD2({};{})"),
        (6, 6, "MOD2({};{})"),
        (8, 0, "WITT({1})"),
        (9, 1, "MOD2({};{1})"),
        (10, 2, "MOD2({};{1})"),
        (12, 0, "WITT({1})"),
    ]
    .into_iter()
    .map(|(s, f, m)| (s, f, m.to_string()))
    .collect();
    expect("n=2 E_inf cells", cells, want)?;
    Ok("n=2 E_inf chart, Tate tower spacing and case-3 witness d7 match".into())
}

fn gbt() -> Outcome {
    for n in 1..=3u32 {
        check(verify::check_gbt(&ctx(n)))?;
    }
    Ok("derived mod I_k rules equal the closed forms for n = 1..3".into())
}

fn tate() -> Outcome {
    for n in 1..=3u32 {
        check(verify::check_tate(&ctx(n)))?;
    }
    Ok("mod I_n vanishes; v_k^-1 collapses at page 2^(k+1) for n = 1..3".into())
}

fn shift() -> Outcome {
    let shifts = [5i64, 6, 7];
    let sources = [(6i64, 0i64), (14, 0), (30, 0)];
    let targets = [(5i64, 3i64), (13, 7), (29, 15)];
    for n in 1..=3u32 {
        let i = n as usize - 1;
        let s = analysis::gh_shift(&ctx(n), ShiftMethod::Both).map_err(|e| e.to_string())?;
        expect(&format!("n={n} shift"), s.shift, shifts[i])?;
        expect(&format!("n={n} pattern"), s.pattern_candidates, Some(vec![shifts[i]]))?;
        expect(&format!("n={n} trace source"), s.longest_trace.source, sources[i])?;
        expect(&format!("n={n} trace target"), s.longest_trace.target, targets[i])?;
        expect(&format!("n={n} trace fires"), s.longest_trace.fires, true)?;
    }
    Ok("shifts 5, 6, 7; longest d_r from stems 6, 14, 30".into())
}

fn twisted() -> Outcome {
    let want: [&[&[&str]]; 2] = [&[&["0", "u1"], &["0", "1"]], &[&["0", "u1"], &["0", "u2"], &["0", "1"]]];
    for (n, sets) in [2u32, 3].into_iter().zip(want) {
        for (k, set) in (1..=n).zip(sets) {
            let sym = picard::twisted_kernel(k, &ctx(n)).map_err(|e| e.to_string())?;
            expect(&format!("n={n} k={k} symbolic"), sym.solutions.clone(), set.iter().map(|s| s.to_string()).collect())?;
            let mut brute: Vec<String> = oracle::twisted_kernel_bruteforce(n, k, verify::twisted_degree(n, k))
                .iter()
                .map(|f| oracle::poly_to_string(f, k))
                .collect();
            brute.sort();
            let mut set: Vec<String> = set.iter().map(|s| s.to_string()).collect();
            set.sort();
            expect(&format!("n={n} k={k} enumeration"), brute, set)?;
        }
    }
    Ok("n=2 {0,u1},{0,1}; n=3 {0,u1},{0,u2},{0,1}".into())
}

fn exotic() -> Outcome {
    let twists = [4i64, 8, 8, 12, 12, 16];
    for n in 1..=6u32 {
        let (gh, src) = if n <= 3 {
            (analysis::gh_shift(&ctx(n), ShiftMethod::Both).map_err(|e| e.to_string())?.shift, "computed")
        } else {
            (4 + n as i64, "declared")
        };
        let r = analysis::exotic_ledger(n, gh, src).map_err(|e| e.to_string())?;
        let m = 1i64 << (n + 2);
        expect(&format!("n={n} twist"), r.exotic_twist, twists[n as usize - 1])?;
        expect(&format!("n={n} modulus"), r.modulus, m)?;
        expect(&format!("n={n} delta"), r.delta, twists[n as usize - 1].rem_euclid(m))?;
        expect(&format!("n={n} delta nonzero"), r.delta != 0, true)?;
    }
    Ok("twists 4, 8, 8, 12, 12, 16, nonzero mod 2^(n+2)".into())
}

fn properties() -> Outcome {
    let results = common::all_properties(32);
    let names: Vec<&str> = results.iter().map(|(n, _)| *n).collect();
    for (name, r) in results {
        r.map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("32 cases each: {}", names.join(", ")))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("Picard group orders", picard_orders),
        ("gap theorem", gap),
        ("periodicity", periodicity),
        ("figure regression", figures),
        ("GBT derivation", gbt),
        ("Tate vanishing", tate),
        ("Gross-Hopkins shift", shift),
        ("twisted-kernel oracle", twisted),
        ("exotic ledger", exotic),
        ("engine properties", properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(d) => println!("PASS {} {name}: {d}", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {} {name}: {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
