use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use super::fst::{Arc, Fst, StateId};
use super::symbols::EPSILON;
use super::FstError;

/// Epsilon-filter state: which side last moved alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Filter {
    Both,
    LeftAlone,
    RightAlone,
}

/// Relational composition: `(u, w)` with weight `p + q` whenever `a` maps
/// `u` to some `v` with weight `p` and `b` maps `v` to `w` with weight `q`.
///
/// Epsilon moves go through a three-state filter so that each alignment of
/// output epsilons in `a` with input epsilons in `b` yields exactly one path.
pub fn compose(a: &Fst, b: &Fst) -> Result<Fst, FstError> {
    if !std::sync::Arc::ptr_eq(&a.osyms, &b.isyms) && !a.osyms.is_compatible(&b.isyms) {
        return Err(FstError::SymbolTableMismatch);
    }
    let mut out = Fst::new(a.isyms.clone(), b.osyms.clone());
    let (Some(sa), Some(sb)) = (a.start, b.start) else {
        return Ok(out);
    };

    let mut ids: FxHashMap<(StateId, StateId, Filter), StateId> = FxHashMap::default();
    let mut queue = VecDeque::new();
    let mut intern = |key: (StateId, StateId, Filter),
                      out: &mut Fst,
                      queue: &mut VecDeque<(StateId, StateId, Filter)>|
     -> StateId {
        *ids.entry(key).or_insert_with(|| {
            queue.push_back(key);
            out.add_state()
        })
    };

    let start = intern((sa, sb, Filter::Both), &mut out, &mut queue);
    out.set_start(start);

    while let Some(key @ (qa, qb, filter)) = queue.pop_front() {
        let src = intern(key, &mut out, &mut queue);
        let fa = a.final_weight(qa);
        let fb = b.final_weight(qb);
        if !fa.is_zero() && !fb.is_zero() {
            out.set_final(src, fa.times(fb));
        }

        for ea in a.arcs(qa) {
            if ea.olabel == EPSILON {
                if filter != Filter::RightAlone {
                    let dst = intern((ea.next_state, qb, Filter::LeftAlone), &mut out, &mut queue);
                    out.states[src as usize]
                        .arcs
                        .push(Arc::new(ea.ilabel, EPSILON, ea.weight, dst));
                }
                if filter == Filter::Both {
                    for eb in b.arcs_matching_input(qb, EPSILON) {
                        if eb.ilabel != EPSILON {
                            continue;
                        }
                        let dst = intern(
                            (ea.next_state, eb.next_state, Filter::Both),
                            &mut out,
                            &mut queue,
                        );
                        out.states[src as usize].arcs.push(Arc::new(
                            ea.ilabel,
                            eb.olabel,
                            ea.weight.times(eb.weight),
                            dst,
                        ));
                    }
                }
            } else {
                for eb in b.arcs_matching_input(qb, ea.olabel) {
                    if eb.ilabel != ea.olabel {
                        continue;
                    }
                    let dst = intern(
                        (ea.next_state, eb.next_state, Filter::Both),
                        &mut out,
                        &mut queue,
                    );
                    out.states[src as usize].arcs.push(Arc::new(
                        ea.ilabel,
                        eb.olabel,
                        ea.weight.times(eb.weight),
                        dst,
                    ));
                }
            }
        }

        if filter != Filter::LeftAlone {
            for eb in b.arcs_matching_input(qb, EPSILON) {
                if eb.ilabel != EPSILON {
                    continue;
                }
                let dst = intern(
                    (qa, eb.next_state, Filter::RightAlone),
                    &mut out,
                    &mut queue,
                );
                out.states[src as usize]
                    .arcs
                    .push(Arc::new(EPSILON, eb.olabel, eb.weight, dst));
            }
        }
    }
    out.ilabel_sorted = false;
    Ok(out)
}
