use std::collections::HashMap;

/// Integer id of a symbol inside a [`SymbolTable`].
pub type Label = u32;

/// Id 0 is always epsilon.
pub const EPSILON: Label = 0;

/// Printed form of epsilon.
pub const EPSILON_SYMBOL: &str = "<eps>";

/// Bijective map between symbol strings and labels.
///
/// Tables only ever grow, so a table that is a prefix of another one denotes
/// the same labels; [`SymbolTable::is_compatible`] relies on that.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolTable {
    symbols: Vec<String>,
    ids: HashMap<String, Label>,
}

impl Default for SymbolTable {
    fn default() -> Self {
        Self::new()
    }
}

impl SymbolTable {
    pub fn new() -> Self {
        let mut ids = HashMap::new();
        ids.insert(EPSILON_SYMBOL.to_string(), EPSILON);
        SymbolTable {
            symbols: vec![EPSILON_SYMBOL.to_string()],
            ids,
        }
    }

    /// Builds a table holding `symbols` after epsilon, in order, skipping duplicates.
    pub fn from_symbols<I, S>(symbols: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut table = Self::new();
        for s in symbols {
            table.intern(s.as_ref());
        }
        table
    }

    /// Returns the label of `symbol`, adding it if absent.
    pub fn intern(&mut self, symbol: &str) -> Label {
        if let Some(&id) = self.ids.get(symbol) {
            return id;
        }
        let id = self.symbols.len() as Label;
        self.symbols.push(symbol.to_string());
        self.ids.insert(symbol.to_string(), id);
        id
    }

    pub fn id_of(&self, symbol: &str) -> Option<Label> {
        self.ids.get(symbol).copied()
    }

    pub fn symbol(&self, id: Label) -> Option<&str> {
        self.symbols.get(id as usize).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// Always false: epsilon is present in every table.
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Label, &str)> {
        self.symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (i as Label, s.as_str()))
    }

    /// True when one table extends the other, i.e. shared labels agree.
    pub fn is_compatible(&self, other: &SymbolTable) -> bool {
        let n = self.symbols.len().min(other.symbols.len());
        self.symbols[..n] == other.symbols[..n]
    }

    /// Rank of every label when symbols are sorted by their string form.
    /// Epsilon ranks lowest.
    pub fn lexicographic_ranks(&self) -> Vec<u32> {
        let mut order: Vec<Label> = (1..self.symbols.len() as Label).collect();
        order.sort_by(|&a, &b| self.symbols[a as usize].cmp(&self.symbols[b as usize]));
        let mut ranks = vec![0; self.symbols.len()];
        for (rank, label) in order.into_iter().enumerate() {
            ranks[label as usize] = rank as u32 + 1;
        }
        ranks
    }

    pub(crate) fn symbols(&self) -> &[String] {
        &self.symbols
    }
}
