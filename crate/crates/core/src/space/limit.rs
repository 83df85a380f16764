//! Finite inverse systems of finite spaces and their limits.

use std::collections::HashMap;

use super::{ContinuousMap, FiniteBoolSpace};
use crate::error::{contract, Error, Result};

/// A transition map `μ : levels[from] → levels[to]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub map: ContinuousMap,
}

/// A finite diagram of finite spaces whose arrows are closed under
/// composition and commute: `μ_ki = μ_ji ∘ μ_kj`.
#[derive(Debug, Clone)]
pub struct InverseSystem {
    levels: Vec<FiniteBoolSpace>,
    arrows: Vec<Arrow>,
    /// levels ordered so that every arrow points forward
    order: Vec<usize>,
    incoming: Vec<Vec<usize>>,
}

impl InverseSystem {
    /// Validates and builds a system. An incoherent diagram is reported with
    /// the offending triple of levels.
    pub fn new(levels: Vec<FiniteBoolSpace>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut by_pair: HashMap<(usize, usize), usize> = HashMap::new();
        let mut kept = Vec::with_capacity(arrows.len());
        for arrow in arrows {
            let (from, to) = (arrow.from, arrow.to);
            if from >= levels.len() || to >= levels.len() {
                return Err(contract(format!("arrow {from} -> {to} names a missing level")));
            }
            if arrow.map.domain() != &levels[from] || arrow.map.codomain() != &levels[to] {
                return Err(contract(format!("arrow {from} -> {to} does not map between its levels")));
            }
            if from == to {
                if arrow.map != ContinuousMap::identity(&levels[from]) {
                    return Err(contract(format!("arrow {from} -> {from} is not the identity")));
                }
                continue;
            }
            if by_pair.insert((from, to), kept.len()).is_some() {
                return Err(contract(format!("two arrows {from} -> {to}")));
            }
            kept.push(arrow);
        }

        let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); levels.len()];
        let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); levels.len()];
        for (a, arrow) in kept.iter().enumerate() {
            outgoing[arrow.from].push(a);
            incoming[arrow.to].push(a);
        }

        for first in &kept {
            for &b in &outgoing[first.to] {
                let second = &kept[b];
                let (k, j, i) = (first.from, first.to, second.to);
                if k == i {
                    return Err(contract(format!("arrows {k} -> {j} -> {k} form a cycle")));
                }
                let witness = || Error::Contract(format!("incoherent system: levels ({k}, {j}, {i}) do not commute"));
                let direct = by_pair.get(&(k, i)).ok_or_else(witness)?;
                if kept[*direct].map != second.map.compose(&first.map)? {
                    return Err(witness());
                }
            }
        }

        // Kahn's algorithm; levels with no incoming arrows first, ties by index.
        let mut indegree: Vec<usize> = incoming.iter().map(Vec::len).collect();
        let mut ready: std::collections::BTreeSet<usize> = (0..levels.len()).filter(|&i| indegree[i] == 0).collect();
        let mut order = Vec::with_capacity(levels.len());
        while let Some(i) = ready.pop_first() {
            order.push(i);
            for &a in &outgoing[i] {
                let t = kept[a].to;
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    ready.insert(t);
                }
            }
        }
        if order.len() != levels.len() {
            return Err(contract("arrows contain a cycle"));
        }

        Ok(InverseSystem { levels, arrows: kept, order, incoming })
    }

    pub fn levels(&self) -> &[FiniteBoolSpace] {
        &self.levels
    }

    /// Non-identity arrows.
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
}

/// The limit of an inverse system: its coherent threads.
#[derive(Debug, Clone)]
pub struct Limit {
    space: FiniteBoolSpace,
    threads: Vec<Vec<usize>>,
    projections: Vec<ContinuousMap>,
}

impl Limit {
    /// Threads are named `t0, t1, …` in canonical order.
    pub fn space(&self) -> &FiniteBoolSpace {
        &self.space
    }

    /// Each thread lists one point index per level. Sorted lexicographically.
    pub fn threads(&self) -> &[Vec<usize>] {
        &self.threads
    }

    /// The canonical map from the limit onto level `i`.
    pub fn projection(&self, level: usize) -> &ContinuousMap {
        &self.projections[level]
    }

    pub fn projections(&self) -> &[ContinuousMap] {
        &self.projections
    }

    /// Index of a thread, if the given tuple is one.
    pub fn find(&self, thread: &[usize]) -> Option<usize> {
        self.threads.binary_search_by(|t| t.as_slice().cmp(thread)).ok()
    }
}

/// Enumerates every coherent thread of the system.
///
/// Levels are visited sources-first; a level reached by an arrow from an
/// already assigned level is forced, so the search only branches at
/// sources.
pub fn limit(system: &InverseSystem) -> Result<Limit> {
    let n = system.levels.len();
    let mut threads = Vec::new();
    let mut current = vec![usize::MAX; n];
    extend(system, 0, &mut current, &mut threads);
    threads.sort();

    let space = FiniteBoolSpace::new((0..threads.len()).map(|i| format!("t{i}")))?;
    let projections = (0..n)
        .map(|level| {
            ContinuousMap::new(space.clone(), system.levels[level].clone(), threads.iter().map(|t| t[level]).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Limit { space, threads, projections })
}

fn extend(system: &InverseSystem, step: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if step == system.order.len() {
        out.push(current.clone());
        return;
    }
    let level = system.order[step];
    let incoming = &system.incoming[level];
    if let Some((&first, rest)) = incoming.split_first() {
        let arrow = &system.arrows[first];
        let forced = arrow.map.apply(current[arrow.from]);
        let consistent = rest.iter().all(|&a| {
            let arrow = &system.arrows[a];
            arrow.map.apply(current[arrow.from]) == forced
        });
        if consistent {
            current[level] = forced;
            extend(system, step + 1, current, out);
        }
    } else {
        for point in 0..system.levels[level].len() {
            current[level] = point;
            extend(system, step + 1, current, out);
        }
    }
    current[level] = usize::MAX;
}
