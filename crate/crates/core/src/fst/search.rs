use std::collections::{BinaryHeap, VecDeque};

use rustc_hash::{FxHashMap, FxHashSet};

use super::fst::{Fst, StateId};
use super::optimize::Queued;
use super::symbols::{Label, EPSILON};
use super::weight::Weight;
use super::FstError;

/// Best path found for one input string.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    pub olabels: Vec<Label>,
    pub weight: Weight,
}

impl Path {
    /// Output symbols resolved through the machine's output table.
    pub fn output_symbols(&self, fst: &Fst) -> Vec<String> {
        self.olabels
            .iter()
            .map(|&l| fst.osyms.symbol(l).unwrap_or("<?>").to_string())
            .collect()
    }

    /// Output symbols concatenated without separators.
    pub fn output_string(&self, fst: &Fst) -> String {
        self.olabels
            .iter()
            .map(|&l| fst.osyms.symbol(l).unwrap_or("<?>"))
            .collect()
    }
}

/// Minimum-cost output for `input`, breaking cost ties by the
/// lexicographically smallest output (compared symbol by symbol).
pub fn shortest_path<S: AsRef<str>>(fst: &Fst, input: &[S]) -> Result<Path, FstError> {
    let mut labels = Vec::with_capacity(input.len());
    for s in input {
        match fst.isyms.id_of(s.as_ref()) {
            Some(l) if l != EPSILON => labels.push(l),
            _ => return Err(FstError::NoAcceptingPath),
        }
    }
    shortest_path_labels(fst, &labels)
}

/// [`shortest_path`] over already-resolved input labels.
pub fn shortest_path_labels(fst: &Fst, input: &[Label]) -> Result<Path, FstError> {
    let ranks = fst.osyms.lexicographic_ranks();
    search(fst, input, None, &ranks)
}

/// A machine paired with a one-symbol lookahead table for repeated searches.
///
/// For every state it records which input labels can be read next (after any
/// run of input-epsilon arcs) and whether a final state is reachable without
/// reading input, so the product search never enters a dead branch.
#[derive(Debug, Clone)]
pub struct IndexedFst {
    fst: Fst,
    words: usize,
    first: Vec<u64>,
    eps_final: Vec<bool>,
    ranks: Vec<u32>,
}

impl IndexedFst {
    pub fn new(fst: Fst) -> Self {
        let n = fst.num_states();
        let words = fst.isyms.len().div_ceil(64).max(1);
        let mut first = vec![0u64; n * words];
        let mut eps_final = vec![false; n];
        let mut rev_eps: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for q in fst.states() {
            let qi = q as usize;
            eps_final[qi] = fst.is_final(q);
            for arc in fst.arcs(q) {
                if arc.ilabel == EPSILON {
                    rev_eps[arc.next_state as usize].push(q);
                } else {
                    let l = arc.ilabel as usize;
                    first[qi * words + l / 64] |= 1 << (l % 64);
                }
            }
        }
        let mut queue: VecDeque<StateId> = fst.states().collect();
        let mut queued = vec![true; n];
        while let Some(q) = queue.pop_front() {
            queued[q as usize] = false;
            for &p in &rev_eps[q as usize] {
                let (pi, qi) = (p as usize, q as usize);
                let mut changed = false;
                if eps_final[qi] && !eps_final[pi] {
                    eps_final[pi] = true;
                    changed = true;
                }
                for w in 0..words {
                    let merged = first[pi * words + w] | first[qi * words + w];
                    if merged != first[pi * words + w] {
                        first[pi * words + w] = merged;
                        changed = true;
                    }
                }
                if changed && !queued[pi] {
                    queued[pi] = true;
                    queue.push_back(p);
                }
            }
        }
        let ranks = fst.osyms.lexicographic_ranks();
        IndexedFst {
            fst,
            words,
            first,
            eps_final,
            ranks,
        }
    }

    pub fn fst(&self) -> &Fst {
        &self.fst
    }

    /// Same contract as [`shortest_path_labels`].
    pub fn shortest_path(&self, input: &[Label]) -> Result<Path, FstError> {
        search(&self.fst, input, Some(self), &self.ranks)
    }

    fn viable(&self, state: StateId, next: Option<Label>) -> bool {
        match next {
            None => self.eps_final[state as usize],
            Some(l) => {
                let l = l as usize;
                if l >= self.words * 64 {
                    return false;
                }
                self.first[state as usize * self.words + l / 64] & (1 << (l % 64)) != 0
            }
        }
    }
}

struct Edge {
    to: u32,
    olabel: Label,
    cost: f64,
}

fn search(
    fst: &Fst,
    input: &[Label],
    index: Option<&IndexedFst>,
    ranks: &[u32],
) -> Result<Path, FstError> {
    let Some(start) = fst.start else {
        return Err(FstError::NoAcceptingPath);
    };
    let n = input.len();
    let viable = |pos: usize, q: StateId| match index {
        Some(ix) => ix.viable(q, input.get(pos).copied()),
        None => true,
    };
    if !viable(0, start) {
        return Err(FstError::NoAcceptingPath);
    }

    // Explore the product of the input chain with `fst`.
    let mut nodes: Vec<(u32, StateId)> = vec![(0, start)];
    let mut ids: FxHashMap<(u32, StateId), u32> = FxHashMap::default();
    ids.insert((0, start), 0);
    let mut edge_start: Vec<u32> = Vec::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut finals: Vec<(u32, f64)> = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        let (pos, q) = nodes[i];
        edge_start.push(edges.len() as u32);
        if pos as usize == n && fst.is_final(q) {
            finals.push((i as u32, fst.final_weight(q).cost()));
        }
        let mut visit = |target: (u32, StateId), olabel: Label, cost: f64, nodes: &mut Vec<_>| {
            if !viable(target.0 as usize, target.1) {
                return;
            }
            let id = *ids.entry(target).or_insert_with(|| {
                nodes.push(target);
                (nodes.len() - 1) as u32
            });
            edges.push(Edge {
                to: id,
                olabel,
                cost,
            });
        };
        for arc in fst.arcs_matching_input(q, EPSILON) {
            if arc.ilabel == EPSILON {
                visit(
                    (pos, arc.next_state),
                    arc.olabel,
                    arc.weight.cost(),
                    &mut nodes,
                );
            }
        }
        if let Some(&sym) = input.get(pos as usize) {
            for arc in fst.arcs_matching_input(q, sym) {
                if arc.ilabel == sym {
                    visit(
                        (pos + 1, arc.next_state),
                        arc.olabel,
                        arc.weight.cost(),
                        &mut nodes,
                    );
                }
            }
        }
        i += 1;
    }
    edge_start.push(edges.len() as u32);
    if finals.is_empty() {
        return Err(FstError::NoAcceptingPath);
    }
    let num = nodes.len();
    let out_edges =
        |v: u32| &edges[edge_start[v as usize] as usize..edge_start[v as usize + 1] as usize];

    // Forward distances.
    let mut fwd = vec![f64::INFINITY; num];
    let mut heap = BinaryHeap::new();
    fwd[0] = 0.0;
    heap.push(Queued { cost: 0.0, node: 0 });
    while let Some(Queued { cost, node }) = heap.pop() {
        if cost > fwd[node as usize] {
            continue;
        }
        for e in out_edges(node) {
            let c = cost + e.cost;
            if c < fwd[e.to as usize] {
                fwd[e.to as usize] = c;
                heap.push(Queued {
                    cost: c,
                    node: e.to,
                });
            }
        }
    }
    let mut final_cost = vec![f64::INFINITY; num];
    let mut best = f64::INFINITY;
    for &(v, w) in &finals {
        final_cost[v as usize] = w;
        best = best.min(fwd[v as usize] + w);
    }
    if best.is_infinite() {
        return Err(FstError::NoAcceptingPath);
    }
    let tol = 1e-9 * best.abs().max(1.0);

    // Backward distances over reversed edges.
    let mut rev_start = vec![0u32; num + 1];
    for e in &edges {
        rev_start[e.to as usize + 1] += 1;
    }
    for v in 0..num {
        rev_start[v + 1] += rev_start[v];
    }
    let mut fill = rev_start.clone();
    let mut rev: Vec<(u32, f64)> = vec![(0, 0.0); edges.len()];
    for v in 0..num as u32 {
        for e in out_edges(v) {
            let slot = &mut fill[e.to as usize];
            rev[*slot as usize] = (v, e.cost);
            *slot += 1;
        }
    }
    let mut bwd = vec![f64::INFINITY; num];
    for &(v, w) in &finals {
        if w < bwd[v as usize] {
            bwd[v as usize] = w;
            heap.push(Queued { cost: w, node: v });
        }
    }
    while let Some(Queued { cost, node }) = heap.pop() {
        if cost > bwd[node as usize] {
            continue;
        }
        for &(from, w) in
            &rev[rev_start[node as usize] as usize..rev_start[node as usize + 1] as usize]
        {
            let c = cost + w;
            if c < bwd[from as usize] {
                bwd[from as usize] = c;
                heap.push(Queued {
                    cost: c,
                    node: from,
                });
            }
        }
    }

    let tight =
        |from: u32, e: &Edge| fwd[from as usize] + e.cost + bwd[e.to as usize] <= best + tol;
    let tight_final = |v: u32| fwd[v as usize] + final_cost[v as usize] <= best + tol;

    // Greedy walk over the subgraph of optimal paths, always taking the
    // smallest next output symbol; stop as soon as the current prefix is
    // itself a complete optimal output.
    let mut olabels = Vec::new();
    let mut frontier: Vec<u32> = vec![0];
    let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
    let mut in_set = vec![false; num];
    loop {
        // epsilon-output closure
        for &v in &frontier {
            in_set[v as usize] = true;
        }
        let mut k = 0;
        while k < frontier.len() {
            let v = frontier[k];
            for e in out_edges(v) {
                if e.olabel == EPSILON && tight(v, e) && !in_set[e.to as usize] {
                    in_set[e.to as usize] = true;
                    frontier.push(e.to);
                }
            }
            k += 1;
        }
        for &v in &frontier {
            in_set[v as usize] = false;
        }
        if frontier.iter().any(|&v| tight_final(v)) {
            return Ok(Path {
                olabels,
                weight: Weight::new(best),
            });
        }
        frontier.sort_unstable();
        if !seen.insert(frontier.clone()) {
            break;
        }
        let mut min_rank = u32::MAX;
        let mut min_label = EPSILON;
        for &v in &frontier {
            for e in out_edges(v) {
                if e.olabel != EPSILON && tight(v, e) {
                    let r = ranks.get(e.olabel as usize).copied().unwrap_or(u32::MAX);
                    if r < min_rank {
                        min_rank = r;
                        min_label = e.olabel;
                    }
                }
            }
        }
        if min_label == EPSILON {
            break;
        }
        let mut next = Vec::new();
        for &v in &frontier {
            for e in out_edges(v) {
                if e.olabel == min_label && tight(v, e) && !in_set[e.to as usize] {
                    in_set[e.to as usize] = true;
                    next.push(e.to);
                }
            }
        }
        for &v in &next {
            in_set[v as usize] = false;
        }
        olabels.push(min_label);
        frontier = next;
    }

    // The infimum is not attained by the greedy walk (a cycle keeps producing
    // smaller prefixes). Fall back to the optimal path with fewest arcs from
    // the current frontier.
    let mut parent: FxHashMap<u32, (u32, Label)> = FxHashMap::default();
    let mut queue: VecDeque<u32> = frontier.iter().copied().collect();
    let roots: FxHashSet<u32> = frontier.iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        if tight_final(v) {
            let mut suffix = Vec::new();
            let mut cur = v;
            while !roots.contains(&cur) {
                let (p, l) = parent[&cur];
                if l != EPSILON {
                    suffix.push(l);
                }
                cur = p;
            }
            suffix.reverse();
            olabels.extend(suffix);
            return Ok(Path {
                olabels,
                weight: Weight::new(best),
            });
        }
        for e in out_edges(v) {
            if tight(v, e) && !roots.contains(&e.to) && !parent.contains_key(&e.to) {
                parent.insert(e.to, (v, e.olabel));
                queue.push_back(e.to);
            }
        }
    }
    Err(FstError::NoAcceptingPath)
}
