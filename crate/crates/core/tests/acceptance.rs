//! Acceptance suite: ten end-to-end criteria, each with a time limit.
//! Prints one PASS/FAIL line per criterion and exits non-zero on failure.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;
use zca::builtin::*;
use zca::corpus::{random_linear_ca, random_memory, random_table_ca, random_table_ca_with_memory, seeded};
use zca::onedim::*;
use zca::projlim::{closed_image_demo, ProjectiveSequence};
use zca::quotient::{quotient_injective, quotient_map, quotient_surjective};
use zca::{compose, Alphabet, CellularAutomaton, GroupElement, Lattice, PeriodicConfig, Symbol, DEFAULT_BUDGET};

type Outcome = Result<(), String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

// 1 ------------------------------------------------------------------------

fn figure_rows() -> Outcome {
    let input = [0u32, 1, 0, 1, 1, 0, 0, 1, 0, 0, 1];
    let x = PeriodicConfig::from_word(Alphabet::binary(), &input).map_err(err)?;
    let maj = majority_ca().apply(&x).map_err(err)?;
    let got: Vec<u32> = maj.values()[1..=9].to_vec();
    ensure(got == [0, 1, 1, 1, 0, 0, 0, 0, 0], || format!("majority row {got:?}"))?;
    let hed = hedlund_marker_ca().apply(&x).map_err(err)?;
    let got: Vec<u32> = hed.values()[1..=8].to_vec();
    ensure(got == [1, 0, 0, 1, 0, 1, 1, 0], || format!("marker row {got:?}"))
}

// 2 ------------------------------------------------------------------------

/// Life by neighbour count, the centre excluded.
fn life_oracle(centre: u32, neighbours: u32) -> u32 {
    u32::from(neighbours == 3 || (centre == 1 && neighbours == 2))
}

fn torus_step(grid: &[[u32; 6]; 6]) -> [[u32; 6]; 6] {
    let mut out = [[0u32; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            let mut n = 0;
            for di in [5, 0, 1] {
                for dj in [5, 0, 1] {
                    if (di, dj) != (0, 0) {
                        n += grid[(i + di) % 6][(j + dj) % 6];
                    }
                }
            }
            out[i][j] = life_oracle(grid[i][j], n);
        }
    }
    out
}

fn game_of_life() -> Outcome {
    let gol = game_of_life_ca();
    let centre = gol.memory().iter().position(|g| g.0 == [0, 0]).ok_or("no centre")?;
    for idx in 0..512u32 {
        let args: Vec<Symbol> = (0..9).map(|k| Symbol((idx >> (8 - k)) & 1)).collect();
        let got = gol.rule().eval_rule(&args).map_err(err)?.0;
        let neighbours: u32 = args
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != centre)
            .map(|(_, s)| s.0)
            .sum();
        ensure(got == life_oracle(args[centre].0, neighbours), || {
            format!("neighbourhood {idx:09b}")
        })?;
    }
    let cosets = Arc::new(Lattice::diagonal(&[6, 6]).map_err(err)?.cosets().map_err(err)?);
    let run = |live: &[(usize, usize)], steps: usize| -> Result<Vec<[[u32; 6]; 6]>, String> {
        let mut grid = [[0u32; 6]; 6];
        for &(i, j) in live {
            grid[i][j] = 1;
        }
        let mut x = PeriodicConfig::from_fn(Alphabet::binary(), cosets.clone(), |g| {
            grid[g.0[0] as usize][g.0[1] as usize]
        })
        .map_err(err)?;
        let mut out = vec![grid];
        for _ in 0..steps {
            x = gol.apply(&x).map_err(err)?;
            let mut g2 = [[0u32; 6]; 6];
            for (i, row) in g2.iter_mut().enumerate() {
                for (j, cell) in row.iter_mut().enumerate() {
                    *cell = x.value_at(&GroupElement(vec![i as i64, j as i64])).map_err(err)?.0;
                }
            }
            let expect = torus_step(out.last().expect("nonempty"));
            ensure(g2 == expect, || "apply disagrees with direct evaluation".into())?;
            out.push(g2);
        }
        Ok(out)
    };
    let blinker = run(&[(2, 1), (2, 2), (2, 3)], 2)?;
    ensure(blinker[2] == blinker[0] && blinker[1] != blinker[0], || {
        "blinker period".into()
    })?;
    let block = run(&[(1, 1), (1, 2), (2, 1), (2, 2)], 1)?;
    ensure(block[1] == block[0], || "block not fixed".into())
}

// 3 ------------------------------------------------------------------------

fn involution() -> Outcome {
    let m = hedlund_marker_ca();
    let c = compose(&m, &m, DEFAULT_BUDGET)
        .map_err(err)?
        .minimize(DEFAULT_BUDGET)
        .map_err(err)?;
    ensure(c.is_identity() && c.memory() == [GroupElement::scalar(0)], || {
        format!("{c:?}")
    })?;
    for n in 1..=8 {
        let q = quotient_map(&m, &Lattice::multiples(n).map_err(err)?, DEFAULT_BUDGET).map_err(err)?;
        ensure(
            quotient_injective(&q).map_err(err)? && quotient_surjective(&q).map_err(err)?,
            || format!("quotient for {n}Z not bijective"),
        )?;
    }
    Ok(())
}

// 4 ------------------------------------------------------------------------

fn goe_crosscheck() -> Outcome {
    for n in 0..=255u8 {
        let ca = elementary_ca(n);
        let wr = build_windowed(&ca, DEFAULT_BUDGET).map_err(err)?;
        let sur = decide_surjective(&wr, DEFAULT_BUDGET).map_err(err)?;
        let pre = decide_preinjective(&wr, DEFAULT_BUDGET).map_err(err)?;
        ensure(sur.surjective == pre.preinjective, || format!("rule {n} disagrees"))?;
        if !sur.surjective {
            let Some(SurjectivityWitness::Orphan(word)) = &sur.witness else {
                return Err(format!("rule {n}: no orphan"));
            };
            ensure(brute_force_orphan(&ca, word), || {
                format!("rule {n}: orphan {word:?} has a preimage")
            })?;
            let d = pre.witness.as_ref().ok_or(format!("rule {n}: no diamond"))?;
            ensure(diamond_by_simulation(&ca, d), || format!("rule {n}: diamond fails"))?;
        }
    }
    Ok(())
}

/// No input word of length `|word| + 2` maps onto `word` (width-3 rules).
fn brute_force_orphan(ca: &CellularAutomaton, word: &[u32]) -> bool {
    let len = word.len() + 2;
    (0..1usize << len).all(|bits| {
        let x: Vec<u32> = (0..len).map(|i| ((bits >> (len - 1 - i)) & 1) as u32).collect();
        (0..word.len()).any(|j| {
            let args: Vec<Symbol> = x[j..j + 3].iter().map(|&s| Symbol(s)).collect();
            ca.rule().eval_rule(&args).map(|s| s.0) != Ok(word[j])
        })
    })
}

/// Simulates both configurations on a wide window and compares images.
fn diamond_by_simulation(ca: &CellularAutomaton, d: &DiamondWitness) -> bool {
    let reach = 4 * (d.first.left.len() + d.first.middle.len() + d.first.right.len()) as i64 + 8;
    let differ: Vec<i64> = (-reach..=reach).filter(|&i| d.first.at(i) != d.second.at(i)).collect();
    let images_equal = (-reach + 2..=reach - 2).all(|j| {
        let eval = |x: &EventuallyPeriodic| {
            let args: Vec<Symbol> = ca.memory().iter().map(|m| Symbol(x.at(j + m.0[0]))).collect();
            ca.rule().eval_rule(&args).map(|s| s.0)
        };
        eval(&d.first) == eval(&d.second)
    });
    !differ.is_empty() && differ[0] == d.lo && *differ.last().unwrap() == d.hi && images_equal
}

// 5 ------------------------------------------------------------------------

fn surjunctivity() -> Outcome {
    let mut corpus: Vec<CellularAutomaton> = (0..=255u8).map(elementary_ca).collect();
    let a3 = Alphabet::finite(3).map_err(err)?;
    let mut rng = seeded(5);
    for _ in 0..100 {
        let width = rng.gen_range(1..=3);
        let left = rng.gen_range(-1..=0);
        corpus.push(random_table_ca(&mut rng, &a3, &a3, left, width, DEFAULT_BUDGET).map_err(err)?);
    }
    let mut injective_count = 0;
    for (i, ca) in corpus.iter().enumerate() {
        let wr = build_windowed(ca, DEFAULT_BUDGET).map_err(err)?;
        let inj = decide_injective(&wr, DEFAULT_BUDGET).map_err(err)?;
        if !inj.injective {
            continue;
        }
        injective_count += 1;
        let sur = decide_surjective(&wr, DEFAULT_BUDGET).map_err(err)?;
        ensure(sur.surjective, || {
            format!("corpus entry {i} injective but not surjective")
        })?;
        for n in 1..=10 {
            let q = quotient_map(ca, &Lattice::multiples(n).map_err(err)?, DEFAULT_BUDGET).map_err(err)?;
            let map = q.explicit().ok_or("quotient not materialized")?;
            let mut seen = vec![false; map.len()];
            for &t in map {
                seen[t as usize] = true;
            }
            ensure(seen.iter().all(|&s| s), || {
                format!("entry {i}: quotient {n}Z not a permutation")
            })?;
        }
    }
    ensure(injective_count > 0, || "no injective rules exercised".into())
}

// 6 ------------------------------------------------------------------------

fn all_periodic(alphabet: &Alphabet, max_period: usize) -> Vec<PeriodicConfig> {
    let q = alphabet.size() as usize;
    let mut out = Vec::new();
    for p in 1..=max_period {
        for idx in 0..q.pow(p as u32) {
            let word: Vec<u32> = (0..p).map(|i| ((idx / q.pow(i as u32)) % q) as u32).collect();
            out.push(PeriodicConfig::from_word(alphabet.clone(), &word).expect("valid word"));
        }
    }
    out
}

fn composition_laws() -> Outcome {
    let mut rng = seeded(6);
    for pair in 0..50 {
        let sizes: Vec<u32> = (0..3).map(|_| rng.gen_range(2..=3)).collect();
        let [a, b, c] = [0, 1, 2].map(|i| Alphabet::finite(sizes[i]).expect("size"));
        let (w1, l1) = (rng.gen_range(1..=2), rng.gen_range(-1..=0));
        let (w2, l2) = (rng.gen_range(1..=2), rng.gen_range(-1..=0));
        let tau = random_table_ca(&mut rng, &a, &b, l1, w1, DEFAULT_BUDGET).map_err(err)?;
        let sigma = random_table_ca(&mut rng, &b, &c, l2, w2, DEFAULT_BUDGET).map_err(err)?;
        let st = compose(&sigma, &tau, DEFAULT_BUDGET).map_err(err)?;
        for x in all_periodic(&a, 8) {
            let direct = sigma.apply(&tau.apply(&x).map_err(err)?).map_err(err)?;
            ensure(st.apply(&x).map_err(err)? == direct, || {
                format!("pair {pair} differs on {:?}", x.values())
            })?;
        }
    }
    for (pair, (alphabet, q)) in (0..20)
        .map(|i| {
            let k = 1 + (i % 2) as u32;
            if i < 10 {
                (Alphabet::vector(3, k).expect("F_3"), 3u64)
            } else {
                (Alphabet::module(2, 3, k).expect("Z/8"), 8u64)
            }
        })
        .enumerate()
    {
        let ms = rng.gen_range(1..=3);
        let mt = rng.gen_range(1..=3);
        let (mem_s, mem_t) = (random_memory(&mut rng, 1, 2, ms), random_memory(&mut rng, 1, 2, mt));
        let sigma = random_linear_ca(&mut rng, &alphabet, 1, mem_s).map_err(err)?;
        let tau = random_linear_ca(&mut rng, &alphabet, 1, mem_t).map_err(err)?;
        let st = compose(&sigma, &tau, DEFAULT_BUDGET).map_err(err)?;
        let expect = convolve(&sigma, &tau, q);
        let got: BTreeMap<i64, Vec<Vec<u64>>> = st
            .memory()
            .iter()
            .zip(st.rule().as_linear().ok_or("composite not linear")?)
            .map(|(g, m)| {
                (
                    g.0[0],
                    m.to_rows()
                        .iter()
                        .map(|r| r.iter().map(|&v| v as u64).collect())
                        .collect(),
                )
            })
            .filter(|(_, m): &(i64, Vec<Vec<u64>>)| m.iter().flatten().any(|&v| v != 0))
            .collect();
        ensure(got == expect, || format!("linear pair {pair}: {got:?} vs {expect:?}"))?;
    }
    Ok(())
}

/// `C_g = sum_{s + t = g} S_s T_t` with plain integer arithmetic mod `q`.
fn convolve(sigma: &CellularAutomaton, tau: &CellularAutomaton, q: u64) -> BTreeMap<i64, Vec<Vec<u64>>> {
    let rows = |ca: &CellularAutomaton| -> Vec<(i64, Vec<Vec<u64>>)> {
        ca.memory()
            .iter()
            .zip(ca.rule().as_linear().expect("linear"))
            .map(|(g, m)| {
                (
                    g.0[0],
                    m.to_rows()
                        .iter()
                        .map(|r| r.iter().map(|&v| v as u64).collect())
                        .collect(),
                )
            })
            .collect()
    };
    let mut out: BTreeMap<i64, Vec<Vec<u64>>> = BTreeMap::new();
    for (s, sm) in rows(sigma) {
        for (t, tm) in rows(tau) {
            let k = sm.len();
            let entry = out.entry(s + t).or_insert_with(|| vec![vec![0; k]; k]);
            for i in 0..k {
                for j in 0..k {
                    let v: u64 = (0..k).map(|l| sm[i][l] * tm[l][j]).sum();
                    entry[i][j] = (entry[i][j] + v) % q;
                }
            }
        }
    }
    out.retain(|_, m| m.iter().flatten().any(|&v| v != 0));
    out
}

// 7 ------------------------------------------------------------------------

fn random_config(rng: &mut impl Rng, a: &Alphabet, dim: usize) -> PeriodicConfig {
    let diag: Vec<i64> = (0..dim).map(|_| rng.gen_range(1..=4)).collect();
    let cosets = Arc::new(Lattice::diagonal(&diag).expect("diag").cosets().expect("cosets"));
    let values: Vec<u32> = (0..cosets.size()).map(|_| rng.gen_range(0..a.size())).collect();
    PeriodicConfig::from_fn(a.clone(), cosets.clone(), |g| values[cosets.index_of(g).expect("rep")]).expect("config")
}

/// `sigma^G(x)(g) = mu((x(g + iota(m)))_m)`, evaluated pointwise.
fn induced_oracle(sigma: &CellularAutomaton, h: &Lattice, x: &PeriodicConfig) -> Vec<u32> {
    let iota: Vec<GroupElement> = sigma.memory().iter().map(|m| h.point(&m.0).expect("point")).collect();
    x.cosets()
        .reps()
        .iter()
        .map(|g| {
            let args: Vec<Symbol> = iota
                .iter()
                .map(|m| x.value_at(&g.checked_add(m).expect("add")).expect("value"))
                .collect();
            sigma.rule().eval_rule(&args).expect("eval").0
        })
        .collect()
}

fn restriction_induction() -> Outcome {
    let mut rng = seeded(7);
    let a = Alphabet::binary();
    let lattices: Vec<(usize, Lattice)> = vec![
        (1, Lattice::multiples(2).map_err(err)?),
        (1, Lattice::multiples(3).map_err(err)?),
        (2, Lattice::from_columns(2, &[vec![1, 1]]).map_err(err)?),
        (2, Lattice::from_columns(2, &[vec![2, 0]]).map_err(err)?),
        (2, Lattice::from_columns(2, &[vec![1, 2], vec![0, 3]]).map_err(err)?),
        (2, Lattice::diagonal(&[2, 1]).map_err(err)?),
    ];
    for inst in 0..30 {
        let (dim, h) = &lattices[inst % lattices.len()];
        let rank = h.rank();
        // sigma on Z^rank, then tau = sigma^G has memory inside H.
        let count = rng.gen_range(1..=3.min(3usize.pow(rank as u32)));
        let mem = random_memory(&mut rng, rank, 1, count);
        let sigma = random_table_ca_with_memory(&mut rng, &a, &a, rank, mem, DEFAULT_BUDGET).map_err(err)?;
        let tau = sigma.induce(h).map_err(err)?;
        let back = tau.restrict(h).map_err(err)?;
        let tau_again = back.induce(h).map_err(err)?;
        for _ in 0..5 {
            let x = random_config(&mut rng, &a, *dim);
            let y = tau.apply(&x).map_err(err)?;
            ensure(y.values() == induced_oracle(&sigma, h, &x), || {
                format!("instance {inst}: induced action")
            })?;
            ensure(tau_again.apply(&x).map_err(err)? == y, || {
                format!("instance {inst}: (tau_H)^G != tau")
            })?;
            let z = random_config(&mut rng, &a, rank);
            ensure(back.apply(&z).map_err(err)? == sigma.apply(&z).map_err(err)?, || {
                format!("instance {inst}: (sigma^G)_H != sigma")
            })?;
        }
    }
    Ok(())
}

// 8 ------------------------------------------------------------------------

fn padic_tower() -> Outcome {
    for p in [2u32, 3] {
        let mut sizes = Vec::new();
        for e in 1..=5u32 {
            let ca = padic_step_ca(p, e).map_err(err)?;
            let InverseOutcome::Found { inverse, .. } = synthesize_inverse(&ca, None, DEFAULT_BUDGET).map_err(err)?
            else {
                return Err(format!("p={p} e={e}: no certified inverse"));
            };
            ensure(certify(&ca, &inverse, DEFAULT_BUDGET).map_err(err)?, || {
                format!("p={p} e={e}: not certified")
            })?;
            let memory: Vec<i64> = inverse.memory().iter().map(|g| g.0[0]).collect();
            ensure(memory == (0..e as i64).collect::<Vec<_>>(), || {
                format!("p={p} e={e}: memory {memory:?}")
            })?;
            let modulus = (p as u64).pow(e);
            let mut rng = seeded(u64::from(p * 10 + e));
            for _ in 0..500 {
                let args: Vec<u64> = (0..e).map(|_| rng.gen_range(0..modulus)).collect();
                let series = args
                    .iter()
                    .enumerate()
                    .map(|(k, &y)| y * (p as u64).pow(k as u32))
                    .sum::<u64>()
                    % modulus;
                let syms: Vec<Symbol> = args.iter().map(|&y| Symbol(y as u32)).collect();
                let got = inverse.rule().eval_rule(&syms).map_err(err)?.0 as u64;
                ensure(got == series, || {
                    format!("p={p} e={e}: inverse{args:?} = {got}, series {series}")
                })?;
            }
            sizes.push(memory.len());
        }
        ensure(sizes.windows(2).all(|w| w[0] < w[1]), || {
            format!("p={p}: sizes {sizes:?}")
        })?;
        let report = padic_tower_report(p, 5, DEFAULT_BUDGET).map_err(err)?;
        ensure(report.all_match(), || format!("p={p}: tower report {report:?}"))?;
    }
    Ok(())
}

// 9 ------------------------------------------------------------------------

fn random_sequence(rng: &mut impl Rng, horizon: usize, max_size: usize, min_size: usize) -> ProjectiveSequence {
    let mut sizes: Vec<usize> = (0..=horizon).map(|_| rng.gen_range(min_size..=max_size)).collect();
    // A map into an empty set needs an empty domain.
    for n in 1..sizes.len() {
        if sizes[n - 1] == 0 {
            sizes[n] = 0;
        }
    }
    let steps = (0..horizon)
        .map(|n| (0..sizes[n + 1]).map(|_| rng.gen_range(0..sizes[n] as u32)).collect())
        .collect();
    ProjectiveSequence::new(sizes, steps).expect("valid sequence")
}

fn check_sequence_laws(s: &ProjectiveSequence) -> Outcome {
    let h = s.horizon();
    for n in 0..=h {
        ensure(
            s.composite(n, n).map_err(err)? == (0..s.sizes()[n] as u32).collect::<Vec<_>>(),
            || "f_nn is not the identity".into(),
        )?;
        for m in n..=h {
            let fnm = s.composite(n, m).map_err(err)?;
            for k in m..=h {
                let fmk = s.composite(m, k).map_err(err)?;
                let fnk = s.composite(n, k).map_err(err)?;
                ensure(fmk.iter().map(|&x| fnm[x as usize]).collect::<Vec<_>>() == fnk, || {
                    format!("f_{n}{k} != f_{n}{m} f_{m}{k}")
                })?;
            }
        }
    }
    // Brute-force universal sets: intersection of all images f_{nm}(X_m).
    let mut brute = Vec::new();
    for n in 0..=h {
        let mut set: Vec<u32> = (0..s.sizes()[n] as u32).collect();
        for m in n..=h {
            let img = s.composite(n, m).map_err(err)?;
            set.retain(|x| img.contains(x));
        }
        brute.push(set);
    }
    ensure(brute == s.universal_sets(), || {
        "universal sets differ from brute force".into()
    })?;
    ensure(s.threads() == s.threads_within(&brute), || "thread sets differ".into())
}

/// Extends a partial sequence by every choice of next set size and map.
fn exhaust(sizes: &mut Vec<usize>, steps: &mut Vec<Vec<u32>>, horizon: usize, max_size: usize) -> Outcome {
    if sizes.len() == horizon + 1 {
        let s = ProjectiveSequence::new(sizes.clone(), steps.clone()).map_err(err)?;
        return check_sequence_laws(&s);
    }
    let prev = sizes.last().copied();
    let top = if prev == Some(0) { 0 } else { max_size };
    for size in 0..=top {
        sizes.push(size);
        match prev {
            None => exhaust(sizes, steps, horizon, max_size)?,
            Some(p) => {
                for code in 0..p.pow(size as u32) {
                    steps.push((0..size).map(|i| ((code / p.pow(i as u32)) % p) as u32).collect());
                    exhaust(sizes, steps, horizon, max_size)?;
                    steps.pop();
                }
            }
        }
        sizes.pop();
    }
    Ok(())
}

fn projective_limits() -> Outcome {
    // Every sequence with horizon at most 3 and sets of size at most 3.
    for horizon in 0..=3 {
        exhaust(&mut Vec::new(), &mut Vec::new(), horizon, 3)?;
    }
    let mut rng = seeded(9);
    for _ in 0..2000 {
        let horizon = rng.gen_range(0..=6);
        let s = random_sequence(&mut rng, horizon, 4, 0);
        check_sequence_laws(&s)?;
    }
    for i in 0..200 {
        let s = random_sequence(&mut rng, 10, 4, 1);
        let t = s.extract_limit().ok_or(format!("instance {i}: no thread"))?;
        ensure(s.is_thread(&t), || format!("instance {i}: invalid thread"))?;
        ensure((0..10).all(|n| s.steps()[n][t[n + 1] as usize] == t[n]), || {
            format!("instance {i}: thread check")
        })?;
    }
    let a = Alphabet::binary();
    let mut found = [0usize; 2];
    for i in 0..20 {
        let width = rng.gen_range(1..=3);
        let left = rng.gen_range(-1..=0);
        let ca = if i < 3 {
            [xor_ca(), majority_ca(), elementary_ca(110)][i].clone()
        } else {
            random_table_ca(&mut rng, &a, &a, left, width, DEFAULT_BUDGET).map_err(err)?
        };
        let period = rng.gen_range(1..=4);
        let word: Vec<u32> = if i == 1 {
            vec![0, 1, 0, 0, 1, 1]
        } else {
            (0..period).map(|_| rng.gen_range(0..2)).collect()
        };
        let y = PeriodicConfig::from_word(a.clone(), &word).map_err(err)?;
        let wr = build_windowed(&ca, DEFAULT_BUDGET).map_err(err)?;
        let demo = closed_image_demo(&wr, &y, None, DEFAULT_BUDGET).map_err(err)?;
        let pre = preimage_periodic(&wr, &y, DEFAULT_BUDGET).map_err(err)?;
        ensure(demo.is_some() == pre.is_some(), || {
            format!("instance {i}: demo and periodic search disagree")
        })?;
        if let Some(t) = demo {
            found[1] += 1;
            let hi = t.lo + t.window.len() as i64 - 1;
            let (l, r) = (wr.left(), wr.right());
            for j in t.lo - l..=hi - r {
                let args: Vec<Symbol> = ca
                    .memory()
                    .iter()
                    .map(|m| Symbol(t.window[(j + m.0[0] - t.lo) as usize]))
                    .collect();
                let out = ca.rule().eval_rule(&args).map_err(err)?.0;
                ensure(out == word[j.rem_euclid(word.len() as i64) as usize], || {
                    format!("instance {i}: window")
                })?;
            }
        } else {
            found[0] += 1;
        }
    }
    ensure(found[0] > 0 && found[1] > 0, || {
        format!("demo outcomes not both exercised: {found:?}")
    })
}

// 10 -----------------------------------------------------------------------

fn quotient_commutation() -> Outcome {
    let mut rng = seeded(10);
    let a = Alphabet::binary();
    for i in 0..20 {
        let (dim, max_index) = if i < 10 { (1, 12) } else { (2, 9) };
        let count = rng.gen_range(1..=if dim == 1 { 3 } else { 4 });
        let memory = random_memory(&mut rng, dim, if dim == 1 { 2 } else { 1 }, count);
        let ca = random_table_ca_with_memory(&mut rng, &a, &a, dim, memory, DEFAULT_BUDGET).map_err(err)?;
        for n in 1..=max_index {
            for h in Lattice::all_of_index(dim, n).map_err(err)? {
                let q = quotient_map(&ca, &h, DEFAULT_BUDGET).map_err(err)?;
                ensure(q.commutes_everywhere().map_err(err)?, || {
                    format!("ca {i}: lattice {h:?}")
                })?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("figure reproduction", 1, figure_rows),
        ("game of life", 1, game_of_life),
        ("involution law", 5, involution),
        ("garden of eden cross-check", 60, goe_crosscheck),
        ("surjunctivity in dimension one", 300, surjunctivity),
        ("composition laws", 120, composition_laws),
        ("restriction and induction", 60, restriction_induction),
        ("p-adic tower", 120, padic_tower),
        ("projective limits", 120, projective_limits),
        ("quotient commutation", 300, quotient_commutation),
    ];
    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let timed_out = elapsed > Duration::from_secs(*limit);
        let status = if outcome.is_ok() && !timed_out { "PASS" } else { "FAIL" };
        let detail = match (&outcome, timed_out) {
            (Err(e), _) => format!(": {e}"),
            (Ok(()), true) => ": over time limit".to_string(),
            _ => String::new(),
        };
        println!(
            "{status} [{:>2}] {name} ({:.2}s, limit {limit}s){detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
        if status == "FAIL" {
            failures += 1;
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
