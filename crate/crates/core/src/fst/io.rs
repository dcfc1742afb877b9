//! Rule-file (TSV) loading and the binary machine format.

use std::io::{Read, Write};
use std::sync::Arc as Shared;

use super::fst::{Arc, Fst, State};
use super::symbols::{Label, SymbolTable, EPSILON};
use super::weight::Weight;
use super::FstError;

/// One `spoken<TAB>written[<TAB>weight]` row.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub spoken: String,
    pub written: String,
    pub weight: Option<f64>,
}

impl Rule {
    pub fn new(spoken: impl Into<String>, written: impl Into<String>) -> Self {
        Rule {
            spoken: spoken.into(),
            written: written.into(),
            weight: None,
        }
    }

    pub fn weighted(spoken: impl Into<String>, written: impl Into<String>, weight: f64) -> Self {
        Rule {
            weight: Some(weight),
            ..Rule::new(spoken, written)
        }
    }
}

/// Parses a UTF-8 rule file. `#` lines and blank lines are skipped.
pub fn parse_rule_file(text: &str) -> Result<Vec<Rule>, FstError> {
    let mut rules = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = i + 1;
        let malformed = |reason: &str| FstError::MalformedRow {
            line: lineno,
            reason: reason.to_string(),
        };
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() > 3 {
            return Err(malformed("more than three columns"));
        }
        let spoken = fields[0];
        if spoken.is_empty() {
            return Err(malformed("missing spoken field"));
        }
        let written = fields.get(1).copied().unwrap_or("");
        let weight = match fields.get(2) {
            None => None,
            Some(w) => match w.trim().parse::<f64>() {
                Ok(v) if v >= 0.0 => Some(v),
                _ => return Err(malformed("weight is not a non-negative number")),
            },
        };
        rules.push(Rule {
            spoken: spoken.to_string(),
            written: written.to_string(),
            weight,
        });
    }
    if rules.is_empty() {
        return Err(FstError::EmptyRuleFile);
    }
    Ok(rules)
}

/// Union of the string-to-string transductions in `rows`, at character
/// granularity. Unseen characters are interned into `table`.
pub fn string_file(rows: &[Rule], table: &mut SymbolTable) -> Result<Fst, FstError> {
    for r in rows {
        for c in r.spoken.chars().chain(r.written.chars()) {
            table.intern(c.encode_utf8(&mut [0; 4]));
        }
    }
    string_file_with(rows, &Shared::new(table.clone()))
}

/// [`string_file`] against a fixed table; every character must already be present.
///
/// The input side is laid out as a trie, so rows sharing a spoken prefix
/// share states; each row's written form is emitted after its spoken form.
pub fn string_file_with(rows: &[Rule], table: &Shared<SymbolTable>) -> Result<Fst, FstError> {
    if rows.is_empty() {
        return Err(FstError::EmptyRuleFile);
    }
    let lookup = |c: char| {
        table
            .id_of(c.encode_utf8(&mut [0; 4]))
            .ok_or_else(|| FstError::UnknownSymbol(c.to_string()))
    };
    let mut fst = Fst::with_symbols(table.clone());
    let root = fst.add_state();
    fst.set_start(root);
    let mut children: Vec<Vec<(Label, u32)>> = vec![Vec::new()];
    for (i, rule) in rows.iter().enumerate() {
        if rule.spoken.is_empty() {
            return Err(FstError::MalformedRow {
                line: i + 1,
                reason: "missing spoken field".into(),
            });
        }
        let mut node = root;
        for c in rule.spoken.chars() {
            let l = lookup(c)?;
            node = match children[node as usize].iter().find(|(k, _)| *k == l) {
                Some(&(_, next)) => next,
                None => {
                    let next = fst.add_state();
                    children.push(Vec::new());
                    children[node as usize].push((l, next));
                    fst.add_arc(node, Arc::new(l, EPSILON, Weight::ONE, next));
                    next
                }
            };
        }
        let weight = Weight::try_new(rule.weight.unwrap_or(0.0)).ok_or(FstError::MalformedRow {
            line: i + 1,
            reason: "negative weight".into(),
        })?;
        let written: Vec<Label> = rule.written.chars().map(lookup).collect::<Result<_, _>>()?;
        if written.is_empty() {
            let fw = fst.final_weight(node).plus(weight);
            fst.set_final(node, fw);
            continue;
        }
        let mut prev = node;
        for (k, &l) in written.iter().enumerate() {
            let next = fst.add_state();
            children.push(Vec::new());
            let w = if k == 0 { weight } else { Weight::ONE };
            fst.add_arc(prev, Arc::new(EPSILON, l, w, next));
            prev = next;
        }
        fst.set_final(prev, Weight::ONE);
    }
    fst.arcsort();
    Ok(fst)
}

const MAGIC: &[u8; 5] = b"ITNF1";

fn write_u32(w: &mut impl Write, v: u32) -> std::io::Result<()> {
    w.write_all(&v.to_le_bytes())
}

fn write_f64(w: &mut impl Write, v: f64) -> std::io::Result<()> {
    w.write_all(&v.to_le_bytes())
}

fn write_table(w: &mut impl Write, t: &SymbolTable) -> std::io::Result<()> {
    write_u32(w, t.len() as u32)?;
    for s in t.symbols() {
        write_u32(w, s.len() as u32)?;
        w.write_all(s.as_bytes())?;
    }
    Ok(())
}

fn read_u32(r: &mut impl Read) -> Result<u32, FstError> {
    let mut b = [0; 4];
    r.read_exact(&mut b).map_err(io_err)?;
    Ok(u32::from_le_bytes(b))
}

fn read_f64(r: &mut impl Read) -> Result<f64, FstError> {
    let mut b = [0; 8];
    r.read_exact(&mut b).map_err(io_err)?;
    Ok(f64::from_le_bytes(b))
}

fn read_table(r: &mut impl Read) -> Result<SymbolTable, FstError> {
    let n = read_u32(r)?;
    let mut t = SymbolTable::new();
    for i in 0..n {
        let len = read_u32(r)? as usize;
        let mut buf = vec![0; len];
        r.read_exact(&mut buf).map_err(io_err)?;
        let s =
            String::from_utf8(buf).map_err(|_| FstError::Format("symbol is not UTF-8".into()))?;
        if i == 0 {
            continue;
        }
        if t.intern(&s) != i {
            return Err(FstError::Format(format!("duplicate symbol {s:?}")));
        }
    }
    Ok(t)
}

fn io_err(e: std::io::Error) -> FstError {
    FstError::Io(e.to_string())
}

impl Fst {
    /// Writes the machine in the versioned `ITNF1` binary layout (little endian).
    pub fn write_binary(&self, w: &mut impl Write) -> Result<(), FstError> {
        let inner = |w: &mut dyn Write| -> std::io::Result<()> {
            let mut w = w;
            w.write_all(MAGIC)?;
            write_table(&mut w, &self.isyms)?;
            write_table(&mut w, &self.osyms)?;
            write_u32(&mut w, self.start.unwrap_or(u32::MAX))?;
            write_u32(&mut w, self.states.len() as u32)?;
            for s in &self.states {
                write_f64(&mut w, s.final_weight.cost())?;
                write_u32(&mut w, s.arcs.len() as u32)?;
                for a in &s.arcs {
                    write_u32(&mut w, a.ilabel)?;
                    write_u32(&mut w, a.olabel)?;
                    write_f64(&mut w, a.weight.cost())?;
                    write_u32(&mut w, a.next_state)?;
                }
            }
            Ok(())
        };
        inner(w).map_err(io_err)
    }

    pub fn read_binary(r: &mut impl Read) -> Result<Fst, FstError> {
        let mut magic = [0; 5];
        r.read_exact(&mut magic).map_err(io_err)?;
        if &magic != MAGIC {
            return Err(FstError::Format("bad magic header".into()));
        }
        let isyms = Shared::new(read_table(r)?);
        let osyms_table = read_table(r)?;
        let osyms = if osyms_table == *isyms {
            isyms.clone()
        } else {
            Shared::new(osyms_table)
        };
        let start = read_u32(r)?;
        let n = read_u32(r)?;
        let weight =
            |c: f64| Weight::try_new(c).ok_or_else(|| FstError::Format("negative weight".into()));
        let mut fst = Fst::new(isyms, osyms);
        for _ in 0..n {
            let final_weight = weight(read_f64(r)?)?;
            let m = read_u32(r)?;
            let mut arcs = Vec::with_capacity(m.min(1 << 16) as usize);
            for _ in 0..m {
                let ilabel = read_u32(r)?;
                let olabel = read_u32(r)?;
                let w = weight(read_f64(r)?)?;
                let next_state = read_u32(r)?;
                arcs.push(Arc::new(ilabel, olabel, w, next_state));
            }
            fst.states.push(State { arcs, final_weight });
        }
        if start != u32::MAX {
            if start >= n {
                return Err(FstError::InvalidState(start));
            }
            fst.start = Some(start);
        }
        fst.ilabel_sorted = fst
            .states
            .iter()
            .all(|s| s.arcs.windows(2).all(|w| w[0].ilabel <= w[1].ilabel));
        fst.validate()?;
        Ok(fst)
    }
}
