use std::sync::Arc as Shared;

use super::fst::{Arc, Fst};
use super::symbols::{Label, SymbolTable, EPSILON};
use super::weight::Weight;
use super::FstError;

/// Linear acceptor for `symbols`, interning unseen symbols into `table`.
pub fn compile_string<S: AsRef<str>>(symbols: &[S], table: &mut SymbolTable) -> Fst {
    let labels: Vec<Label> = symbols.iter().map(|s| table.intern(s.as_ref())).collect();
    let syms = Shared::new(table.clone());
    linear(&labels, &labels, syms.clone(), syms)
}

/// Chain transducer reading `input` and writing `output`.
///
/// The shorter side is padded with epsilons, so the chain has
/// `max(|input|, |output|) + 1` states.
pub fn linear(
    input: &[Label],
    output: &[Label],
    isyms: Shared<SymbolTable>,
    osyms: Shared<SymbolTable>,
) -> Fst {
    let mut fst = Fst::new(isyms, osyms);
    let len = input.len().max(output.len());
    let mut prev = fst.add_state();
    fst.set_start(prev);
    for i in 0..len {
        let next = fst.add_state();
        let il = input.get(i).copied().unwrap_or(EPSILON);
        let ol = output.get(i).copied().unwrap_or(EPSILON);
        fst.add_arc(prev, Arc::new(il, ol, Weight::ONE, next));
        prev = next;
    }
    fst.set_final(prev, Weight::ONE);
    fst.ilabel_sorted = true;
    fst
}

/// Relation union; pairs present in both keep the smaller weight.
pub fn union(a: &Fst, b: &Fst) -> Result<Fst, FstError> {
    union_all(&[a, b])
}

/// Union of any number of machines through one fresh start state.
pub fn union_all(parts: &[&Fst]) -> Result<Fst, FstError> {
    let (first, rest) = parts.split_first().ok_or(FstError::NoOperands)?;
    let mut isyms = first.isyms.clone();
    let mut osyms = first.osyms.clone();
    for p in rest {
        isyms = Fst::merge_tables(&isyms, &p.isyms)?;
        osyms = Fst::merge_tables(&osyms, &p.osyms)?;
    }
    let mut out = Fst::new(isyms, osyms);
    let start = out.add_state();
    out.set_start(start);
    for p in parts {
        let offset = out.append_states(p);
        if let Some(s) = p.start {
            out.add_arc(start, Arc::new(EPSILON, EPSILON, Weight::ONE, s + offset));
        }
    }
    Ok(out)
}

/// Relation concatenation; weights add.
pub fn concat(a: &Fst, b: &Fst) -> Result<Fst, FstError> {
    concat_all(&[a, b])
}

/// Left-to-right concatenation of all `parts`.
pub fn concat_all(parts: &[&Fst]) -> Result<Fst, FstError> {
    let (first, rest) = parts.split_first().ok_or(FstError::NoOperands)?;
    let mut isyms = first.isyms.clone();
    let mut osyms = first.osyms.clone();
    for p in rest {
        isyms = Fst::merge_tables(&isyms, &p.isyms)?;
        osyms = Fst::merge_tables(&osyms, &p.osyms)?;
    }
    let mut out = Fst::new(isyms, osyms);
    if parts.iter().any(|p| p.start.is_none()) {
        return Ok(out);
    }
    let mut prev_finals: Vec<(u32, Weight)> = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        let offset = out.append_states(p);
        let start = p.start.expect("checked above") + offset;
        if i == 0 {
            out.set_start(start);
        }
        for (f, w) in prev_finals.drain(..) {
            out.add_arc(f, Arc::new(EPSILON, EPSILON, w, start));
            out.set_final(f, Weight::ZERO);
        }
        for s in p.states() {
            let w = p.final_weight(s);
            if !w.is_zero() {
                prev_finals.push((s + offset, w));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureMode {
    /// Zero or more repetitions.
    Star,
    /// One or more repetitions.
    Plus,
}

/// Kleene closure.
pub fn closure(a: &Fst, mode: ClosureMode) -> Fst {
    let mut out = Fst::new(a.isyms.clone(), a.osyms.clone());
    let offset = out.append_states(a);
    if let Some(s) = a.start {
        let inner_start = s + offset;
        for st in a.states() {
            let w = a.final_weight(st);
            if !w.is_zero() {
                out.add_arc(st + offset, Arc::new(EPSILON, EPSILON, w, inner_start));
            }
        }
        match mode {
            ClosureMode::Plus => out.set_start(inner_start),
            ClosureMode::Star => {
                let start = out.add_state();
                out.set_start(start);
                out.set_final(start, Weight::ONE);
                out.add_arc(start, Arc::new(EPSILON, EPSILON, Weight::ONE, inner_start));
            }
        }
    } else if mode == ClosureMode::Star {
        let start = out.add_state();
        out.set_start(start);
        out.set_final(start, Weight::ONE);
    }
    out
}

/// `a` or the empty string.
pub fn optional(a: &Fst) -> Fst {
    let eps = Fst::epsilon(a.isyms.clone(), a.osyms.clone());
    union(a, &eps).expect("same tables")
}

/// Adds `weight` to every accepting path.
pub fn with_weight(a: &Fst, weight: Weight) -> Fst {
    let mut out = a.clone();
    for s in out.states.iter_mut() {
        if !s.final_weight.is_zero() {
            s.final_weight = s.final_weight.times(weight);
        }
    }
    out
}

/// Swaps input and output sides.
pub fn invert(a: &Fst) -> Fst {
    let mut out = a.clone();
    std::mem::swap(&mut out.isyms, &mut out.osyms);
    for s in out.states.iter_mut() {
        for arc in s.arcs.iter_mut() {
            std::mem::swap(&mut arc.ilabel, &mut arc.olabel);
        }
    }
    out.ilabel_sorted = false;
    out
}

/// Projects onto the input side, giving an identity acceptor.
pub fn project_input(a: &Fst) -> Fst {
    let mut out = a.clone();
    out.osyms = out.isyms.clone();
    for s in out.states.iter_mut() {
        for arc in s.arcs.iter_mut() {
            arc.olabel = arc.ilabel;
        }
    }
    out
}

/// Projects onto the output side, giving an identity acceptor.
pub fn project_output(a: &Fst) -> Fst {
    let mut out = a.clone();
    out.isyms = out.osyms.clone();
    for s in out.states.iter_mut() {
        for arc in s.arcs.iter_mut() {
            arc.ilabel = arc.olabel;
        }
    }
    out.ilabel_sorted = false;
    out
}
