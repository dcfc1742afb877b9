use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rustc_hash::FxHashMap;

use super::fst::{Arc, Fst, State, StateId};
use super::weight::Weight;

/// Min-heap entry keyed on cost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Queued {
    pub cost: f64,
    pub node: u32,
}

impl Eq for Queued {}

impl Ord for Queued {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Removes states that are unreachable from the start or cannot reach a final state.
pub fn connect(a: &Fst) -> Fst {
    let n = a.num_states();
    let mut out = Fst::new(a.isyms.clone(), a.osyms.clone());
    let Some(start) = a.start else {
        return out;
    };

    let mut accessible = vec![false; n];
    let mut stack = vec![start];
    accessible[start as usize] = true;
    while let Some(s) = stack.pop() {
        for arc in a.arcs(s) {
            if !accessible[arc.next_state as usize] {
                accessible[arc.next_state as usize] = true;
                stack.push(arc.next_state);
            }
        }
    }

    let mut reverse: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for s in a.states() {
        for arc in a.arcs(s) {
            reverse[arc.next_state as usize].push(s);
        }
    }
    let mut coaccessible = vec![false; n];
    let mut stack: Vec<StateId> = a.states().filter(|&s| a.is_final(s)).collect();
    for &s in &stack {
        coaccessible[s as usize] = true;
    }
    while let Some(s) = stack.pop() {
        for &p in &reverse[s as usize] {
            if !coaccessible[p as usize] {
                coaccessible[p as usize] = true;
                stack.push(p);
            }
        }
    }

    if !coaccessible[start as usize] {
        return out;
    }
    let mut remap = vec![u32::MAX; n];
    for s in a.states() {
        if accessible[s as usize] && coaccessible[s as usize] {
            remap[s as usize] = out.add_state();
        }
    }
    for s in a.states() {
        let new = remap[s as usize];
        if new == u32::MAX {
            continue;
        }
        let state = &mut out.states[new as usize];
        state.final_weight = a.final_weight(s);
        state.arcs = a
            .arcs(s)
            .iter()
            .filter(|arc| remap[arc.next_state as usize] != u32::MAX)
            .map(|arc| Arc {
                next_state: remap[arc.next_state as usize],
                ..*arc
            })
            .collect();
    }
    out.start = Some(remap[start as usize]);
    out.ilabel_sorted = a.ilabel_sorted;
    out
}

/// Removes arcs labelled epsilon on both sides.
pub fn rm_epsilon(a: &Fst) -> Fst {
    let n = a.num_states();
    let mut out = Fst::new(a.isyms.clone(), a.osyms.clone());
    out.start = a.start;

    let mut dist: Vec<f64> = vec![f64::INFINITY; n];
    let mut touched: Vec<StateId> = Vec::new();
    let mut heap = BinaryHeap::new();
    let mut merged: FxHashMap<(u32, u32, StateId), usize> = FxHashMap::default();

    for p in a.states() {
        for &t in &touched {
            dist[t as usize] = f64::INFINITY;
        }
        touched.clear();
        merged.clear();

        dist[p as usize] = 0.0;
        touched.push(p);
        heap.push(Queued { cost: 0.0, node: p });
        let mut closure = Vec::new();
        while let Some(Queued { cost, node }) = heap.pop() {
            if cost > dist[node as usize] {
                continue;
            }
            closure.push((node, cost));
            for arc in a.arcs(node) {
                if !arc.is_epsilon() {
                    continue;
                }
                let c = cost + arc.weight.cost();
                let slot = &mut dist[arc.next_state as usize];
                if c < *slot {
                    if slot.is_infinite() {
                        touched.push(arc.next_state);
                    }
                    *slot = c;
                    heap.push(Queued {
                        cost: c,
                        node: arc.next_state,
                    });
                }
            }
        }

        let mut state = State {
            arcs: Vec::new(),
            final_weight: Weight::ZERO,
        };
        for (q, d) in closure {
            let fw = a.final_weight(q);
            if !fw.is_zero() {
                state.final_weight = state.final_weight.plus(Weight::new(d).times(fw));
            }
            for arc in a.arcs(q) {
                if arc.is_epsilon() {
                    continue;
                }
                let w = Weight::new(d).times(arc.weight);
                let key = (arc.ilabel, arc.olabel, arc.next_state);
                match merged.get(&key) {
                    Some(&i) => {
                        let existing = &mut state.arcs[i];
                        existing.weight = existing.weight.plus(w);
                    }
                    None => {
                        merged.insert(key, state.arcs.len());
                        state.arcs.push(Arc { weight: w, ..*arc });
                    }
                }
            }
        }
        out.states.push(state);
    }
    out.ilabel_sorted = false;
    out
}

/// Trims, removes epsilon-epsilon arcs, trims again and sorts arcs by input label.
pub fn optimize(a: &Fst) -> Fst {
    let mut out = connect(&rm_epsilon(&connect(a)));
    out.arcsort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fst::{compile_string, shortest_path, union, SymbolTable, EPSILON};

    #[test]
    fn dangling_state_is_removed() {
        let mut t = SymbolTable::new();
        let mut f = compile_string(&["a", "b"], &mut t);
        let dangling = f.add_state();
        f.add_arc(dangling, Arc::new(1, 1, Weight::ONE, f.start().unwrap()));
        let before = f.num_states();
        let g = optimize(&f);
        assert!(g.num_states() < before);
        assert_eq!(
            shortest_path(&g, &["a", "b"]).unwrap().output_symbols(&g),
            vec!["a", "b"]
        );
    }

    #[test]
    fn optimize_is_idempotent() {
        let mut t = SymbolTable::new();
        let a = compile_string(&["a", "b"], &mut t);
        let b = compile_string(&["a", "c"], &mut t);
        let u = union(&a, &b).unwrap();
        let once = optimize(&u);
        let twice = optimize(&once);
        assert_eq!(once.num_states(), twice.num_states());
        assert_eq!(once.num_arcs(), twice.num_arcs());
    }

    #[test]
    fn epsilon_arcs_are_gone() {
        let mut t = SymbolTable::new();
        let a = compile_string(&["a"], &mut t);
        let b = compile_string(&["b"], &mut t);
        let u = optimize(&union(&a, &b).unwrap());
        for s in u.states() {
            for arc in u.arcs(s) {
                assert!(!(arc.ilabel == EPSILON && arc.olabel == EPSILON));
            }
        }
    }
}
