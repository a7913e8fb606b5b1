use std::process::ExitCode;
use std::time::Instant;

use alcove_calculus::oracle::checks::Context;
use alcove_calculus::oracle::{check_sl2_peel, check_uparrow, CheckReport};
use alcove_calculus::{Result, RootSystem};

const TYPES: [&str; 3] = ["A1", "A2", "B2"];
const PRIMES: [i64; 2] = [5, 7];
const SAMPLES: usize = 200;
const SEED: u64 = 20_251_015;

struct Outcome {
    instances: u64,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            instances: 0,
            failures: Vec::new(),
        }
    }

    fn add(&mut self, label: &str, report: Result<CheckReport>) {
        match report {
            Ok(r) => {
                self.instances += r.instances;
                self.failures
                    .extend(r.failures.into_iter().map(|f| format!("{label}: {f}")));
            }
            Err(e) => self.failures.push(format!("{label}: {e}")),
        }
    }
}

fn max_d_for(type_spec: &str) -> i64 {
    if type_spec == "A1" {
        4
    } else {
        3
    }
}

fn main() -> ExitCode {
    let mut outcomes: Vec<(&str, Outcome)> = [
        "1 stab_size",
        "2 refl_i",
        "3 refl_ord",
        "4 trans_round_trip",
        "5 basis_commutation",
        "6 domexp_certificates",
        "7 tilt_summand",
        "8 section_squares",
        "9 sl2_peel",
        "10 uparrow",
    ]
    .into_iter()
    .map(|n| (n, Outcome::new()))
    .collect();

    let start = Instant::now();
    for t in TYPES {
        for p in PRIMES {
            let label = format!("{t} p={p}");
            let ctx = match Context::new(t, p, 3 * p) {
                Ok(c) => c,
                Err(e) => {
                    for (_, o) in outcomes.iter_mut().take(8) {
                        o.failures.push(format!("{label}: {e}"));
                    }
                    continue;
                }
            };
            outcomes[0].1.add(&label, ctx.stab_size());
            outcomes[1].1.add(&label, ctx.refl_i());
            outcomes[2].1.add(&label, Ok(ctx.refl_ord()));
            outcomes[3].1.add(&label, ctx.trans_round_trip());
            outcomes[4].1.add(&label, ctx.basis_commutation());
            match ctx.domexp_and_tilt(max_d_for(t)) {
                Ok((dom, tilt)) => {
                    outcomes[5].1.add(&label, Ok(dom));
                    outcomes[6].1.add(&label, Ok(tilt));
                }
                Err(e) => {
                    outcomes[5].1.failures.push(format!("{label}: {e}"));
                    outcomes[6].1.failures.push(format!("{label}: {e}"));
                }
            }
            outcomes[7].1.add(&label, ctx.sections(SAMPLES, SEED));
        }
    }
    outcomes[8].1.add("A1 p=5", check_sl2_peel(5, 4));
    for t in ["A1", "A2"] {
        let rs = RootSystem::from_spec(t);
        let report = rs.and_then(|rs| check_uparrow(&rs, 5, 10));
        outcomes[9].1.add(&format!("{t} p=5"), report);
    }

    let mut all_ok = true;
    for (name, o) in &outcomes {
        let ok = o.failures.is_empty() && o.instances > 0;
        all_ok &= ok;
        println!(
            "{} criterion {name}: {} instances, {} failures",
            if ok { "PASS" } else { "FAIL" },
            o.instances,
            o.failures.len()
        );
        for f in o.failures.iter().take(5) {
            println!("    {f}");
        }
    }
    println!("elapsed {:.1}s", start.elapsed().as_secs_f64());
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
