use std::sync::Arc as Shared;

use super::symbols::{Label, SymbolTable, EPSILON};
use super::weight::Weight;
use super::FstError;

pub type StateId = u32;

/// A transition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub ilabel: Label,
    pub olabel: Label,
    pub weight: Weight,
    pub next_state: StateId,
}

impl Arc {
    pub fn new(ilabel: Label, olabel: Label, weight: Weight, next_state: StateId) -> Self {
        Arc {
            ilabel,
            olabel,
            weight,
            next_state,
        }
    }

    pub(crate) fn is_epsilon(&self) -> bool {
        self.ilabel == EPSILON && self.olabel == EPSILON
    }
}

#[derive(Debug, Clone)]
pub(crate) struct State {
    pub(crate) arcs: Vec<Arc>,
    pub(crate) final_weight: Weight,
}

impl State {
    fn new() -> Self {
        State {
            arcs: Vec::new(),
            final_weight: Weight::ZERO,
        }
    }
}

/// Weighted finite-state transducer over the tropical semiring.
///
/// Algebraic operations take their operands by reference and return new
/// machines; an `Fst` handed to another thread is never mutated.
#[derive(Debug, Clone)]
pub struct Fst {
    pub(crate) states: Vec<State>,
    pub(crate) start: Option<StateId>,
    pub(crate) isyms: Shared<SymbolTable>,
    pub(crate) osyms: Shared<SymbolTable>,
    /// Arcs of every state are sorted by input label.
    pub(crate) ilabel_sorted: bool,
}

impl Fst {
    /// An empty machine (no states, empty relation).
    pub fn new(isyms: Shared<SymbolTable>, osyms: Shared<SymbolTable>) -> Self {
        Fst {
            states: Vec::new(),
            start: None,
            isyms,
            osyms,
            ilabel_sorted: true,
        }
    }

    /// An empty machine whose input and output share one table.
    pub fn with_symbols(syms: Shared<SymbolTable>) -> Self {
        Fst::new(syms.clone(), syms)
    }

    /// Machine accepting only the empty string, with weight one.
    pub fn epsilon(isyms: Shared<SymbolTable>, osyms: Shared<SymbolTable>) -> Self {
        let mut fst = Fst::new(isyms, osyms);
        let s = fst.add_state();
        fst.set_start(s);
        fst.set_final(s, Weight::ONE);
        fst
    }

    pub fn add_state(&mut self) -> StateId {
        self.states.push(State::new());
        (self.states.len() - 1) as StateId
    }

    pub fn set_start(&mut self, state: StateId) {
        assert!(
            (state as usize) < self.states.len(),
            "start state out of range"
        );
        self.start = Some(state);
    }

    pub fn set_final(&mut self, state: StateId, weight: Weight) {
        self.states[state as usize].final_weight = weight;
    }

    pub fn add_arc(&mut self, from: StateId, arc: Arc) {
        assert!(
            (arc.next_state as usize) < self.states.len(),
            "arc target out of range"
        );
        self.ilabel_sorted = false;
        self.states[from as usize].arcs.push(arc);
    }

    pub fn start(&self) -> Option<StateId> {
        self.start
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.states.iter().map(|s| s.arcs.len()).sum()
    }

    pub fn arcs(&self, state: StateId) -> &[Arc] {
        &self.states[state as usize].arcs
    }

    pub fn final_weight(&self, state: StateId) -> Weight {
        self.states[state as usize].final_weight
    }

    pub fn is_final(&self, state: StateId) -> bool {
        !self.final_weight(state).is_zero()
    }

    pub fn input_symbols(&self) -> &Shared<SymbolTable> {
        &self.isyms
    }

    pub fn output_symbols(&self) -> &Shared<SymbolTable> {
        &self.osyms
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        0..self.states.len() as StateId
    }

    /// Sorts every state's arcs by (input label, output label).
    pub fn arcsort(&mut self) {
        for state in &mut self.states {
            state.arcs.sort_by_key(|a| (a.ilabel, a.olabel));
        }
        self.ilabel_sorted = true;
    }

    /// Arcs of `state` whose input label is `label`.
    pub(crate) fn arcs_matching_input(&self, state: StateId, label: Label) -> &[Arc] {
        let arcs = &self.states[state as usize].arcs;
        if self.ilabel_sorted {
            let lo = arcs.partition_point(|a| a.ilabel < label);
            let hi = lo + arcs[lo..].partition_point(|a| a.ilabel == label);
            &arcs[lo..hi]
        } else {
            // callers filter again; unsorted machines are scanned in full
            arcs
        }
    }

    /// Copies all states of `other` into `self`, returning the id offset.
    pub(crate) fn append_states(&mut self, other: &Fst) -> StateId {
        let offset = self.states.len() as StateId;
        self.states.extend(other.states.iter().map(|s| {
            State {
                arcs: s
                    .arcs
                    .iter()
                    .map(|a| Arc {
                        next_state: a.next_state + offset,
                        ..*a
                    })
                    .collect(),
                final_weight: s.final_weight,
            }
        }));
        self.ilabel_sorted = false;
        offset
    }

    /// Picks the larger of two compatible tables.
    pub(crate) fn merge_tables(
        a: &Shared<SymbolTable>,
        b: &Shared<SymbolTable>,
    ) -> Result<Shared<SymbolTable>, FstError> {
        if Shared::ptr_eq(a, b) {
            return Ok(a.clone());
        }
        if !a.is_compatible(b) {
            return Err(FstError::SymbolTableMismatch);
        }
        Ok(if a.len() >= b.len() {
            a.clone()
        } else {
            b.clone()
        })
    }

    /// Checks that every label resolves in the attached tables.
    pub fn validate(&self) -> Result<(), FstError> {
        for state in &self.states {
            for arc in &state.arcs {
                if arc.ilabel as usize >= self.isyms.len()
                    || arc.olabel as usize >= self.osyms.len()
                {
                    return Err(FstError::UnknownLabel);
                }
                if arc.next_state as usize >= self.states.len() {
                    return Err(FstError::InvalidState(arc.next_state));
                }
            }
        }
        Ok(())
    }
}
