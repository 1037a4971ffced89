//! Builtin fixtures and seeded random instances.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{validate_instance, AgentId, Instance, RawInstance, RawMenu};
use crate::money::Money;

pub const BUILTIN_NAMES: [&str; 3] = ["gale-shapley-4", "illustration", "illustration-modified"];

fn menu(a: u32, b: u32, contracts: &[(i64, i64)]) -> RawMenu {
    RawMenu {
        pair: [AgentId(a), AgentId(b)],
        contracts: contracts
            .iter()
            .map(|&(x, y)| [(AgentId(a), Money::from_int(x)), (AgentId(b), Money::from_int(y))].into())
            .collect(),
    }
}

fn ids(v: &[u32]) -> Vec<AgentId> {
    v.iter().copied().map(AgentId).collect()
}

/// The named fixture instances.
///
/// * `gale-shapley-4`: four room-mates where agent `a` values partner `b` at
///   `u[a][b]`; each pair may either collaborate or split (0, 0).
/// * `illustration`: two firms, two workers, two contracts per pair.
/// * `illustration-modified`: as above with the {1,4} menu replaced by
///   {(4,1), (3,3)}.
pub fn builtin(name: &str) -> Result<Instance> {
    let raw = match name {
        "gale-shapley-4" => {
            // u[a][b] for a, b in 1..=4 (row a, column b).
            const U: [[i64; 4]; 4] = [[0, 3, 2, 1], [2, 0, 3, 1], [3, 2, 0, 1], [3, 2, 1, 0]];
            let mut menus = Vec::new();
            for a in 1..=4u32 {
                for b in a + 1..=4 {
                    let collab = (U[a as usize - 1][b as usize - 1], U[b as usize - 1][a as usize - 1]);
                    menus.push(menu(a, b, &[collab, (0, 0)]));
                }
            }
            RawInstance { agents: ids(&[1, 2, 3, 4]), firms: None, workers: None, menus }
        }
        "illustration" | "illustration-modified" => {
            let one_four: &[(i64, i64)] = if name == "illustration" { &[(4, 1), (1, 4)] } else { &[(4, 1), (3, 3)] };
            RawInstance {
                agents: ids(&[1, 2, 3, 4]),
                firms: Some(ids(&[1, 2])),
                workers: Some(ids(&[3, 4])),
                menus: vec![
                    menu(1, 3, &[(3, 1), (1, 3)]),
                    menu(1, 4, one_four),
                    menu(2, 3, &[(3, 2), (2, 3)]),
                    menu(2, 4, &[(4, 2), (2, 4)]),
                ],
            }
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    validate_instance(&raw)
}

/// Parameters for [`gen_random`]. Firms get ids `1..=n_firms`, workers the
/// next `n_workers` ids.
#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub n_firms: u32,
    pub n_workers: u32,
    /// Inclusive bounds on the number of contracts in each menu.
    pub contracts_per_pair: (usize, usize),
    /// Inclusive bounds on every integer payoff.
    pub value_range: (i64, i64),
    /// Probability that a firm-worker pair has a menu at all.
    pub menu_density: f64,
    /// Menus pair strictly decreasing firm shares with strictly increasing
    /// worker shares.
    pub force_pairwise_efficient: bool,
    /// Each firm draws its shares with different workers from disjoint pools.
    pub force_disjoint_yields: bool,
    /// No agent sees the same payoff in two different contracts: firms as
    /// with disjoint yields plus distinct shares within a menu, and each
    /// worker's shares distinct across all firms.
    pub strict_preferences: bool,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            n_firms: 2,
            n_workers: 2,
            contracts_per_pair: (1, 3),
            value_range: (0, 5),
            menu_density: 1.0,
            force_pairwise_efficient: false,
            force_disjoint_yields: false,
            strict_preferences: false,
            seed: 0,
        }
    }
}

fn draw(rng: &mut ChaCha8Rng, pool: &[i64], k: usize, distinct: bool, what: &str) -> Result<Vec<i64>> {
    if pool.is_empty() || (distinct && pool.len() < k) {
        return Err(Error::InfeasibleParams(format!(
            "{what} needs {k} distinct values but only {} remain in the value range",
            pool.len()
        )));
    }
    Ok(if distinct {
        pool.choose_multiple(rng, k).copied().collect()
    } else {
        (0..k).map(|_| *pool.choose(rng).expect("non-empty")).collect()
    })
}

/// A random two-sided instance, fully determined by `p`.
pub fn gen_random(p: &GenParams) -> Result<Instance> {
    let bad = |why: &str| Err(Error::InfeasibleParams(why.to_string()));
    if p.n_firms == 0 || p.n_workers == 0 {
        return bad("need at least one firm and one worker");
    }
    let (cmin, cmax) = p.contracts_per_pair;
    if cmin == 0 || cmin > cmax {
        return bad("contracts_per_pair must satisfy 1 <= min <= max");
    }
    let (lo, hi) = p.value_range;
    if lo > hi {
        return bad("value_range must satisfy min <= max");
    }
    if !(0.0..=1.0).contains(&p.menu_density) {
        return bad("menu_density must lie in [0, 1]");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let firms: Vec<u32> = (1..=p.n_firms).collect();
    let workers: Vec<u32> = (p.n_firms + 1..=p.n_firms + p.n_workers).collect();
    let values: Vec<i64> = (lo..=hi).collect();
    let firm_distinct = p.force_disjoint_yields || p.strict_preferences;
    let mut worker_used: Vec<BTreeSet<i64>> = vec![BTreeSet::new(); workers.len()];

    let mut menus = Vec::new();
    for &f in &firms {
        let mut firm_used = BTreeSet::new();
        for (wi, &w) in workers.iter().enumerate() {
            if !rng.gen_bool(p.menu_density) {
                continue;
            }
            let k = rng.gen_range(cmin..=cmax);
            let firm_pool: Vec<i64> =
                values.iter().copied().filter(|v| !firm_distinct || !firm_used.contains(v)).collect();
            let worker_pool: Vec<i64> =
                values.iter().copied().filter(|v| !p.strict_preferences || !worker_used[wi].contains(v)).collect();
            let within_distinct = p.force_pairwise_efficient || p.strict_preferences;
            let mut fv = draw(&mut rng, &firm_pool, k, within_distinct, &format!("firm {f}"))?;
            let mut wv = draw(&mut rng, &worker_pool, k, within_distinct, &format!("worker {w}"))?;
            if p.force_pairwise_efficient {
                fv.sort_unstable_by(|a, b| b.cmp(a));
                wv.sort_unstable();
            }
            if firm_distinct {
                firm_used.extend(fv.iter().copied());
            }
            if p.strict_preferences {
                worker_used[wi].extend(wv.iter().copied());
            }
            let contracts: Vec<(i64, i64)> = fv.into_iter().zip(wv).collect();
            menus.push(menu(f, w, &contracts));
        }
    }

    validate_instance(&RawInstance {
        agents: ids(&firms.iter().chain(&workers).copied().collect::<Vec<_>>()),
        firms: Some(ids(&firms)),
        workers: Some(ids(&workers)),
        menus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Allocation, Pair};
    use crate::verify::{has_disjoint_yields, is_pairwise_efficient};

    fn contracts(inst: &Instance, a: u32, b: u32) -> Vec<Allocation> {
        inst.menu(Pair::new(AgentId(a), AgentId(b)).unwrap()).unwrap().contracts().to_vec()
    }

    fn split(a: u32, x: i64, b: u32, y: i64) -> Allocation {
        Allocation::between(AgentId(a), Money::from_int(x), AgentId(b), Money::from_int(y)).unwrap()
    }

    #[test]
    fn builtin_menus() {
        let gs = builtin("gale-shapley-4").unwrap();
        assert_eq!(contracts(&gs, 1, 2), vec![split(1, 3, 2, 2), split(1, 0, 2, 0)]);
        assert_eq!(contracts(&gs, 3, 4), vec![split(3, 1, 4, 1), split(3, 0, 4, 0)]);
        assert_eq!(gs.menu_count(), 6);

        let ill = builtin("illustration").unwrap();
        assert_eq!(contracts(&ill, 2, 4), vec![split(2, 4, 4, 2), split(2, 2, 4, 4)]);
        let m = builtin("illustration-modified").unwrap();
        assert_eq!(contracts(&m, 1, 4), vec![split(1, 4, 4, 1), split(1, 3, 4, 3)]);
        assert_eq!(contracts(&m, 1, 3), contracts(&ill, 1, 3));

        assert_eq!(builtin("nope"), Err(Error::UnknownName("nope".into())));
    }

    #[test]
    fn same_seed_same_instance() {
        let p = GenParams { n_firms: 3, n_workers: 4, seed: 42, menu_density: 0.7, ..GenParams::default() };
        assert_eq!(gen_random(&p).unwrap(), gen_random(&p).unwrap());
        let q = GenParams { seed: 43, ..p.clone() };
        assert_ne!(gen_random(&p).unwrap(), gen_random(&q).unwrap());
    }

    #[test]
    fn zero_density_has_no_menus() {
        let p = GenParams { menu_density: 0.0, n_firms: 3, n_workers: 3, ..GenParams::default() };
        assert_eq!(gen_random(&p).unwrap().menu_count(), 0);
    }

    #[test]
    fn forced_properties_hold() {
        for seed in 0..100 {
            let p = GenParams {
                n_firms: 3,
                n_workers: 3,
                value_range: (1, 20),
                force_pairwise_efficient: true,
                force_disjoint_yields: true,
                seed,
                ..GenParams::default()
            };
            let inst = gen_random(&p).unwrap();
            assert!(is_pairwise_efficient(&inst).unwrap().holds, "seed {seed}");
            assert!(has_disjoint_yields(&inst).unwrap().holds, "seed {seed}");
        }
    }

    #[test]
    fn exhausted_pools_are_reported() {
        let p = GenParams {
            n_firms: 1,
            n_workers: 4,
            contracts_per_pair: (3, 3),
            value_range: (0, 5),
            force_pairwise_efficient: true,
            force_disjoint_yields: true,
            ..GenParams::default()
        };
        assert!(matches!(gen_random(&p), Err(Error::InfeasibleParams(_))));
        let bad = GenParams { contracts_per_pair: (0, 2), ..GenParams::default() };
        assert!(matches!(gen_random(&bad), Err(Error::InfeasibleParams(_))));
    }
}
