use thiserror::Error;

use crate::fst::{closure, ClosureMode, Fst};

use super::alphabet::Alphabet;
use super::Grouping;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupingError {
    #[error("{0:?} is not a digit string without leading zeros")]
    MalformedDigits(String),
}

/// Inserts thousands separators into a plain digit string.
pub fn group_digits(digits: &str, style: Grouping) -> Result<String, GroupingError> {
    let well_formed = !digits.is_empty()
        && digits.bytes().all(|b| b.is_ascii_digit())
        && (digits == "0" || !digits.starts_with('0'));
    if !well_formed {
        return Err(GroupingError::MalformedDigits(digits.to_string()));
    }
    if digits.len() <= 3 {
        return Ok(digits.to_string());
    }
    let (head, tail) = digits.split_at(digits.len() - 3);
    let step = match style {
        Grouping::Western => 3,
        Grouping::Indian => 2,
    };
    let mut groups: Vec<&str> = Vec::new();
    let mut end = head.len();
    while end > 0 {
        let start = end.saturating_sub(step);
        groups.push(&head[start..end]);
        end = start;
    }
    groups.reverse();
    groups.push(tail);
    Ok(groups.join(","))
}

/// Transducer from a digit string to its grouped form.
pub(crate) fn grouping_fst(a: &Alphabet, style: Grouping) -> Fst {
    let d = a.digit();
    let comma = a.insert(",");
    match style {
        Grouping::Western => {
            let group = a.concat(&[&comma, &d, &d, &d]);
            a.concat(&[&a.repeat(&d, 1, 3), &closure(&group, ClosureMode::Star)])
        }
        Grouping::Indian => {
            let pair = a.concat(&[&comma, &d, &d]);
            let long = a.concat(&[
                &a.repeat(&d, 1, 2),
                &closure(&pair, ClosureMode::Star),
                &comma,
                &d,
                &d,
                &d,
            ]);
            a.union(&[&a.repeat(&d, 1, 3), &long])
        }
    }
}
