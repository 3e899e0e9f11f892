use std::fmt;
use std::str::FromStr;

use crate::coeff_rings::IdealDescriptor;
use crate::groups::{self, FormKind, GroupWord, WordItem};
use crate::ring::Ring;

use super::ReductionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Procedure {
    Field,
    Radical,
    Semilocal,
    Relative,
    Pivot,
    Search,
}

impl Procedure {
    pub const ALL: [Procedure; 6] = [
        Procedure::Field,
        Procedure::Radical,
        Procedure::Semilocal,
        Procedure::Relative,
        Procedure::Pivot,
        Procedure::Search,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Procedure::Field => "field",
            Procedure::Radical => "radical",
            Procedure::Semilocal => "semilocal",
            Procedure::Relative => "relative",
            Procedure::Pivot => "pivot",
            Procedure::Search => "search",
        }
    }
}

impl fmt::Display for Procedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Procedure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Procedure::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| format!("unknown procedure {s:?}"))
    }
}

/// Certificate that `input . word = output`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionTranscript<E> {
    pub procedure: Procedure,
    pub input: Vec<E>,
    pub word: GroupWord<E>,
    pub output: Vec<E>,
    pub relative_ideal: Option<IdealDescriptor>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReplayVerdict {
    /// `act_on_row(input, word) == output`.
    pub matches: bool,
    /// The claimed output is `e_1`.
    pub reaches_e1: bool,
    /// Structural relative check, when an ideal is declared.
    pub relative: Option<bool>,
}

impl ReplayVerdict {
    pub fn ok(&self) -> bool {
        self.matches && self.relative != Some(false)
    }
}

impl<E: Clone + PartialEq> ReductionTranscript<E> {
    pub fn form(&self) -> FormKind {
        self.word.form
    }

    /// Recomputes the action from scratch.
    pub fn replay<R: Ring<Elem = E>>(&self, r: &R) -> Result<ReplayVerdict, ReductionError> {
        let out = groups::act_on_row(r, &self.input, &self.word)?;
        let relative = match &self.relative_ideal {
            Some(i) => Some(groups::word_in_relative_subgroup(r, &self.word, i)?),
            None => None,
        };
        Ok(ReplayVerdict {
            matches: out == self.output,
            reaches_e1: self.output == groups::unit_row(r, self.output.len(), 1),
            relative,
        })
    }
}

/// Rows after each top-level item of `word`, starting with `input`.
pub fn replay_states<R: Ring>(
    r: &R,
    input: &[R::Elem],
    word: &GroupWord<R::Elem>,
) -> Result<Vec<Vec<R::Elem>>, ReductionError> {
    let mut states = vec![input.to_vec()];
    for item in &word.items {
        let step = GroupWord { form: word.form, items: vec![item.clone()] };
        let next = groups::act_on_row(r, states.last().unwrap(), &step)?;
        states.push(next);
    }
    Ok(states)
}

/// Builds a transcript after checking the replay internally.
pub(crate) fn finish<R: Ring>(
    r: &R,
    procedure: Procedure,
    input: &[R::Elem],
    word: GroupWord<R::Elem>,
    relative_ideal: Option<IdealDescriptor>,
) -> Result<ReductionTranscript<R::Elem>, ReductionError> {
    let output = groups::act_on_row(r, input, &word)?;
    if output != groups::unit_row(r, input.len(), 1) {
        return Err(ReductionError::Replay(procedure.to_string()));
    }
    Ok(ReductionTranscript { procedure, input: input.to_vec(), word, output, relative_ideal })
}

/// Keeps only items whose parameters are not all zero.
pub(crate) fn drop_trivial<R: Ring>(r: &R, items: Vec<WordItem<R::Elem>>) -> Vec<WordItem<R::Elem>> {
    items
        .into_iter()
        .filter(|it| {
            let core = match it {
                WordItem::Conjugate { core, .. } => core.as_slice(),
                WordItem::Token(_) => std::slice::from_ref(it),
            };
            let mut nontrivial = false;
            for c in core {
                c.for_each_token(&mut |t| nontrivial |= !r.is_zero(t.param()));
            }
            nontrivial
        })
        .collect()
}
