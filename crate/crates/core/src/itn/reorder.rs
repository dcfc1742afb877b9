use super::tags::{serialize_fields, Token};
use super::ItnError;

/// Largest field count a token may have before reordering is refused.
pub const MAX_FIELDS: usize = 8;

/// Advances `p` to the next permutation in lexicographic order; false after the last.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("p[i+1] > p[i]");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Lazy sequence of serializations covering every field order of every token.
///
/// The first item keeps the original order. After that the last token's
/// fields cycle fastest, each through lexicographic permutation order.
#[derive(Debug, Clone)]
pub struct Reorderings<'a> {
    tokens: &'a [Token],
    orders: Vec<Vec<usize>>,
    done: bool,
}

impl Reorderings<'_> {
    fn render(&self) -> String {
        let mut out = String::new();
        for (i, (t, order)) in self.tokens.iter().zip(&self.orders).enumerate() {
            if i > 0 {
                out.push(' ');
            }
            serialize_fields(&mut out, t, order);
        }
        out
    }

    fn advance(&mut self) {
        for order in self.orders.iter_mut().rev() {
            if next_permutation(order) {
                return;
            }
            order.sort_unstable();
        }
        self.done = true;
    }
}

impl Iterator for Reorderings<'_> {
    type Item = String;

    fn next(&mut self) -> Option<String> {
        if self.done {
            return None;
        }
        let item = self.render();
        self.advance();
        Some(item)
    }
}

pub fn generate_reorderings(tokens: &[Token]) -> Result<Reorderings<'_>, ItnError> {
    if let Some(t) = tokens.iter().find(|t| t.fields.len() > MAX_FIELDS) {
        return Err(ItnError::TooManyFields {
            class: t.class,
            count: t.fields.len(),
        });
    }
    Ok(Reorderings {
        tokens,
        orders: tokens
            .iter()
            .map(|t| (0..t.fields.len()).collect())
            .collect(),
        done: false,
    })
}
