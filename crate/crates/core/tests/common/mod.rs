#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ade_chambers::chambers::ChamberStructure;
use ade_chambers::mutation::exchange_matrix;
use ade_chambers::{
    enumerate_chambers, knit, mutate, nu_beta, nu_theta, pairing, restricted_walls, Configuration, Covector,
    DimensionVector, DynkinType, Error, MutationState, StabilityVector,
};

/// Every affine ADE type of rank at most 8 with every set of at most 4
/// retained vertices, slots in increasing order.
pub fn sweep() -> &'static [Configuration] {
    static SWEEP: OnceLock<Vec<Configuration>> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let mut out = Vec::new();
        for ty in DynkinType::all_up_to(8) {
            let r = ty.rank();
            for mask in 1u32..(1 << r) {
                if mask.count_ones() > 4 {
                    continue;
                }
                let slots: Vec<usize> = (1..=r).filter(|v| mask & (1 << (v - 1)) != 0).collect();
                out.push(Configuration::of_type(ty, slots).unwrap());
            }
        }
        out
    })
}

/// Sweep entry `index` with its slots shuffled by `seed`.
pub fn shuffled(index: usize, seed: u64) -> Configuration {
    let c = &sweep()[index % sweep().len()];
    let mut slots = c.slots().to_vec();
    slots.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    Configuration::new(c.diagram_arc().clone(), slots).unwrap()
}

/// Enumerated structure of sweep entry `index`, computed once per process.
pub fn structure(index: usize) -> Arc<ChamberStructure> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<ChamberStructure>>>> = OnceLock::new();
    let index = index % sweep().len();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().unwrap().get(&index) {
        return s.clone();
    }
    let s = Arc::new(enumerate_chambers(&sweep()[index]).unwrap_or_else(|e| panic!("{:?}: {e}", sweep()[index])));
    cache.lock().unwrap().insert(index, s.clone());
    s
}

pub fn covs(raw: &[&[i64]]) -> BTreeSet<Covector> {
    raw.iter().map(|c| Covector::new(c.to_vec()).unwrap()).collect()
}

pub fn wall_set(s: &ChamberStructure) -> BTreeSet<Covector> {
    s.walls.iter().cloned().collect()
}

pub fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn truncated(v: &[i64], n: usize) -> Vec<i64> {
    v.iter().copied().cycle().take(n).collect()
}

/// `νβ·νθ = β·θ`, `ν(νβ) = β` and `νθ·β' = θ·ν'β'`, where `ν'` is the
/// mutation back from the mutated configuration.
pub fn lemma_identities(config: &Configuration, slot: usize, theta: &[i64], beta: &[i64]) -> Result<(), String> {
    let r = config.len();
    let slot = slot % r;
    let theta = StabilityVector::from_integers(&truncated(theta, r));
    let mut beta = DimensionVector(truncated(beta, r + 1));
    let b = knit(config, slot).map_err(|e| e.to_string())?;
    let mutated = config.with_vertex(slot, b.new_vertex).unwrap();
    let back = knit(&mutated, slot).map_err(|e| e.to_string())?;

    let nb = match nu_beta(config, &b, &beta) {
        Ok(v) => v,
        Err(Error::Domain { .. }) => {
            beta.0[slot + 1] = 0;
            nu_beta(config, &b, &beta).map_err(|e| e.to_string())?
        }
        Err(e) => return Err(e.to_string()),
    };
    let nt = nu_theta(config, &b, &theta).unwrap();
    let lhs = pairing(&mutated, &nt, &nb).unwrap();
    let rhs = pairing(config, &theta, &beta).unwrap();
    if lhs != rhs {
        return Err(format!("{config:?} slot {}: νβ·νθ = {lhs}, β·θ = {rhs}", slot + 1));
    }
    let nnb = nu_beta(&mutated, &back, &nb).map_err(|e| e.to_string())?;
    if nnb != beta {
        return Err(format!("{config:?} slot {}: ν(νβ) = {:?}, β = {:?}", slot + 1, nnb.0, beta.0));
    }
    // any dimension vector of the mutated algebra in the domain of ν'
    let beta2 = nb.clone();
    let back_beta2 = nu_beta(&mutated, &back, &beta2).map_err(|e| e.to_string())?;
    let left = pairing(&mutated, &nt, &beta2).unwrap();
    let right = pairing(config, &theta, &back_beta2).unwrap();
    if left != right {
        return Err(format!("{config:?} slot {}: adjointness {left} vs {right}", slot + 1));
    }
    Ok(())
}

/// The exchange sequence is additive in rank: `Σ b_v δ_v = δ(pivot) + δ(new)`.
pub fn delta_balance(config: &Configuration, slot: usize) -> Result<(), String> {
    let slot = slot % config.len();
    let d = config.diagram();
    let x = knit(config, slot).map_err(|e| e.to_string())?;
    let middle: u32 = x.b.iter().map(|(&v, &m)| m * d.delta(v)).sum();
    let ends = d.delta(x.pivot_vertex) + d.delta(x.new_vertex);
    if middle != ends {
        return Err(format!("{config:?} slot {}: middle rank {middle}, ends {ends}", slot + 1));
    }
    Ok(())
}

/// Mutating twice at the same slot returns to the same configuration and chart.
pub fn double_mutation(config: &Configuration, word: &[usize], slot: usize) -> Result<(), String> {
    let r = config.len();
    let mut state = MutationState::initial(config.clone());
    for &s in word {
        state = mutate(&state, s % r).map_err(|e| e.to_string())?;
    }
    let twice = mutate(&mutate(&state, slot % r).unwrap(), slot % r).map_err(|e| e.to_string())?;
    if twice.config != state.config || twice.chart != state.chart || twice.inverse != state.inverse {
        return Err(format!("{config:?} word {word:?}: mutating slot {} twice moved the state", slot % r + 1));
    }
    let step = exchange_matrix(&state.config, &knit(&state.config, slot % r).unwrap());
    if step.mul(&step) != ade_chambers::IntMatrix::identity(r) {
        return Err(format!("{config:?}: exchange matrix is not an involution"));
    }
    Ok(())
}

pub fn unimodular(s: &ChamberStructure) -> Result<(), String> {
    for c in &s.chambers {
        let det = c.chart.determinant();
        if det.abs() != 1 || c.inverse.mul(&c.chart) != ade_chambers::IntMatrix::identity(s.dim()) {
            return Err(format!("{:?} word {:?}: chart determinant {det}", s.config, c.word));
        }
    }
    Ok(())
}

/// `points` random integer points off every wall each lie in exactly one
/// chamber. Cones are scale invariant, so integer points stand in for
/// rational ones.
pub fn generic_coverage(s: &ChamberStructure, seed: u64, points: usize) -> Result<(), String> {
    let r = s.dim();
    let mut by_sign: HashMap<Vec<bool>, usize> = HashMap::new();
    for (i, c) in s.chambers.iter().enumerate() {
        let p: Vec<i64> = c
            .interior_point
            .iter()
            .map(|x| x.to_integer().try_into().unwrap())
            .collect();
        if !c.inverse.apply(&p).iter().all(|&v| v > 0) {
            return Err(format!("{:?}: interior point of {:?} is not interior", s.config, c.word));
        }
        let signs: Vec<bool> = s.walls.iter().map(|w| w.eval(&p) > 0).collect();
        if let Some(j) = by_sign.insert(signs, i) {
            return Err(format!("{:?}: chambers {j} and {i} overlap", s.config));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < points {
        let p: Vec<i64> = (0..r).map(|_| rng.gen_range(-1_000_000..=1_000_000)).collect();
        let values: Vec<i64> = s.walls.iter().map(|w| w.eval(&p)).collect();
        if values.contains(&0) {
            continue;
        }
        done += 1;
        let signs: Vec<bool> = values.iter().map(|&v| v > 0).collect();
        // distinct sign vectors: at most one chamber can contain p
        let Some(&i) = by_sign.get(&signs) else {
            return Err(format!("{:?}: {p:?} lies in no chamber", s.config));
        };
        if !s.chambers[i].inverse.apply(&p).iter().all(|&v| v > 0) {
            return Err(format!("{:?}: {p:?} has the signs of chamber {i} but is outside it", s.config));
        }
    }
    Ok(())
}

pub fn oracle_walls(s: &ChamberStructure) -> Result<(), String> {
    let oracle = restricted_walls(&s.config);
    if oracle.covectors != s.walls {
        return Err(format!(
            "{:?}: oracle walls {:?}, BFS walls {:?}",
            s.config, oracle.covectors, s.walls
        ));
    }
    Ok(())
}

pub fn rational_point(v: &[(i64, i64)]) -> Vec<BigRational> {
    v.iter()
        .map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
        .collect()
}
