//! Oracle-equivalence suites at desk scale, seeded for reproducibility.

use anyhow::Result;
use hyperorient::connectivity::{lambda_dyper, lambda_dyper_brute, lambda_hyper, lambda_hyper_brute, reachable};
use hyperorient::gen::{random_hypergraph, random_orientation, random_subset, HypergraphShape};
use hyperorient::orient::{connectivity_profile, reorient_to_head, solve_srcoh, srcoh_oracle, SrcohInstance};
use hyperorient::reductions::sat_to_sht;
use hyperorient::satkit::brute_solve;
use hyperorient::steiner::{sht_oracle, solve_sht, verify_sht_certificate};
use hyperorient::{orient, CnfFormula};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Verdict;

pub const DEFAULT_SEED: u64 = 20_240_601;

const SHAPE: HypergraphShape = HypergraphShape::new(8, 6, 2, 4);

type Suite = fn(&mut ChaCha8Rng, usize) -> Result<Option<String>>;

pub fn run(seed: u64, cases: usize) -> Result<Verdict> {
    let suites: [(&str, Suite); 5] = [
        ("lambda flow vs cut enumeration", lambda_suite),
        ("steiner hypertree solver vs oracle", sht_suite),
        ("rooted orientation solver vs oracle", srcoh_suite),
        ("3sat reduction vs brute-force sat", sat_suite),
        ("circuit reversal keeps connectivity", reorient_suite),
    ];
    let mut all_ok = true;
    for (i, (name, suite)) in suites.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        match suite(&mut rng, cases)? {
            None => println!("ok    {name} ({cases} cases)"),
            Some(msg) => {
                all_ok = false;
                println!("FAIL  {name}: {msg}");
            }
        }
    }
    println!("seed {seed}");
    Ok(all_ok.into())
}

fn lambda_suite(rng: &mut ChaCha8Rng, cases: usize) -> Result<Option<String>> {
    for case in 0..cases {
        let h = random_hypergraph(rng, SHAPE);
        let d = orient(&h, &random_orientation(rng, &h))?;
        for u in 0..h.n() {
            for v in (0..h.n()).filter(|&v| v != u) {
                if lambda_hyper(&h, u, v)? != lambda_hyper_brute(&h, u, v)? {
                    return Ok(Some(format!("case {case}: hypergraph pair ({u},{v})")));
                }
                if lambda_dyper(&d, u, v)? != lambda_dyper_brute(&d, u, v)? {
                    return Ok(Some(format!("case {case}: orientation pair ({u},{v})")));
                }
            }
        }
    }
    Ok(None)
}

fn sht_suite(rng: &mut ChaCha8Rng, cases: usize) -> Result<Option<String>> {
    for case in 0..cases {
        let h = random_hypergraph(rng, SHAPE);
        let k = rng.gen_range(2..=4usize).min(h.n());
        let s = random_subset(rng, h.n(), k);
        let fast = solve_sht(&h, &s)?;
        let slow = sht_oracle(&h, &s)?;
        if fast.is_some() != slow.is_some() {
            return Ok(Some(format!("case {case}: solver {} oracle {}", fast.is_some(), slow.is_some())));
        }
        if fast.iter().chain(slow.iter()).any(|c| !verify_sht_certificate(&h, &s, c)) {
            return Ok(Some(format!("case {case}: certificate rejected")));
        }
    }
    Ok(None)
}

fn srcoh_suite(rng: &mut ChaCha8Rng, cases: usize) -> Result<Option<String>> {
    for case in 0..cases {
        let h = random_hypergraph(rng, SHAPE);
        let r = rng.gen_range(0..h.n());
        let k = rng.gen_range(0..=3usize.min(h.n()));
        let s = random_subset(rng, h.n(), k);
        let inst = SrcohInstance::new(h, r, s)?;
        let fast = solve_srcoh(&inst)?;
        if fast.is_some() != srcoh_oracle(&inst)?.is_some() {
            return Ok(Some(format!("case {case}: disagreement")));
        }
        if let Some(o) = fast {
            if !inst.is_satisfied_by(&o)? {
                return Ok(Some(format!("case {case}: solver orientation misses a terminal")));
            }
        }
    }
    Ok(None)
}

fn random_formula(rng: &mut ChaCha8Rng) -> CnfFormula {
    let vars = rng.gen_range(3..=4usize);
    let count = rng.gen_range(0..=6usize);
    let pool: Vec<i64> = (1..=vars as i64).collect();
    let clauses: Vec<[i64; 3]> = (0..count)
        .map(|_| {
            let picked: Vec<i64> = pool.choose_multiple(rng, 3).copied().collect();
            std::array::from_fn(|i| if rng.gen_bool(0.5) { picked[i] } else { -picked[i] })
        })
        .collect();
    CnfFormula::from_dimacs_clauses(vars, &clauses).expect("variables in range")
}

fn sat_suite(rng: &mut ChaCha8Rng, cases: usize) -> Result<Option<String>> {
    for case in 0..cases {
        let f = random_formula(rng);
        let map = sat_to_sht(&f)?;
        let sat = brute_solve(&f)?.is_some();
        let tree = sht_oracle(&map.hypergraph, &map.terminals)?.is_some();
        if sat != tree {
            return Ok(Some(format!("case {case}: sat {sat}, hypertree {tree}")));
        }
    }
    Ok(None)
}

fn reorient_suite(rng: &mut ChaCha8Rng, cases: usize) -> Result<Option<String>> {
    let shape = HypergraphShape::new(7, 6, 2, 4);
    let mut done = 0;
    while done < cases {
        let h = random_hypergraph(rng, shape);
        let o = random_orientation(rng, &h);
        let e = rng.gen_range(0..h.m());
        let x = *h.edge(e).choose(rng).expect("nonempty hyperedge");
        if !reachable(&orient(&h, &o)?, o.head(e), x) {
            continue;
        }
        let turned = reorient_to_head(&h, &o, e, x)?;
        if turned.head(e) != x || connectivity_profile(&h, &turned)? != connectivity_profile(&h, &o)? {
            return Ok(Some(format!("case {done}: connectivity changed")));
        }
        done += 1;
    }
    Ok(None)
}
