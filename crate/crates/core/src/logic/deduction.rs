use std::fmt;

use thiserror::Error;

use super::axiom::{match_schema, Schema};
use super::sentence::Sentence;

/// Why a deduction line is admitted.
///
/// Line numbers are 1-based, matching the proof text format; hypothesis
/// indices are 0-based positions in [`Deduction::hypotheses`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Justification {
    Axiom(Schema),
    Hypothesis(usize),
    /// `major` holds `X → Y`, `minor` holds `X`, and the line is `Y`.
    ModusPonens { major: usize, minor: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub sentence: Sentence,
    pub justification: Justification,
}

/// A numbered sequence of justified sentences deriving `goal` from
/// `hypotheses`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deduction {
    pub hypotheses: Vec<Sentence>,
    pub lines: Vec<Line>,
    pub goal: Sentence,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("deduction has no lines")]
    Empty,
    #[error("line {line}: cites line {cited}, which is not strictly earlier")]
    ForwardReference { line: usize, cited: usize },
    #[error("line {line}: not an instance of axiom {schema}")]
    NotAnInstance { line: usize, schema: Schema },
    #[error("line {line}: hypothesis {index} does not exist")]
    NoSuchHypothesis { line: usize, index: usize },
    #[error("line {line}: sentence differs from hypothesis {index}")]
    HypothesisMismatch { line: usize, index: usize },
    #[error("line {line}: major premise (line {major}) is not an implication")]
    MajorNotImplication { line: usize, major: usize },
    #[error("line {line}: modus ponens does not fit lines {major} and {minor}")]
    MpMismatch { line: usize, major: usize, minor: usize },
    #[error("last line does not match the goal")]
    GoalMismatch,
}

impl CheckError {
    /// The offending line, when the failure is attributable to one.
    pub fn line(&self) -> Option<usize> {
        match *self {
            CheckError::Empty | CheckError::GoalMismatch => None,
            CheckError::ForwardReference { line, .. }
            | CheckError::NotAnInstance { line, .. }
            | CheckError::NoSuchHypothesis { line, .. }
            | CheckError::HypothesisMismatch { line, .. }
            | CheckError::MajorNotImplication { line, .. }
            | CheckError::MpMismatch { line, .. } => Some(line),
        }
    }
}

impl Deduction {
    /// A deduction with no hypotheses whose goal is its last line.
    pub fn closed(lines: Vec<Line>) -> Option<Self> {
        let goal = lines.last()?.sentence.clone();
        Some(Deduction { hypotheses: Vec::new(), lines, goal })
    }

    /// Verifies every line in order, then the goal.
    pub fn check(&self) -> Result<(), CheckError> {
        if self.lines.is_empty() {
            return Err(CheckError::Empty);
        }
        for (i, l) in self.lines.iter().enumerate() {
            self.check_line(i + 1, l)?;
        }
        match self.lines.last() {
            Some(last) if last.sentence == self.goal => Ok(()),
            _ => Err(CheckError::GoalMismatch),
        }
    }

    fn check_line(&self, line: usize, l: &Line) -> Result<(), CheckError> {
        match l.justification {
            Justification::Axiom(schema) => match_schema(schema, &l.sentence)
                .map(|_| ())
                .ok_or(CheckError::NotAnInstance { line, schema }),
            Justification::Hypothesis(index) => match self.hypotheses.get(index) {
                None => Err(CheckError::NoSuchHypothesis { line, index }),
                Some(h) if *h == l.sentence => Ok(()),
                Some(_) => Err(CheckError::HypothesisMismatch { line, index }),
            },
            Justification::ModusPonens { major, minor } => {
                for cited in [major, minor] {
                    if cited == 0 || cited >= line {
                        return Err(CheckError::ForwardReference { line, cited });
                    }
                }
                let major_s = &self.lines[major - 1].sentence;
                let minor_s = &self.lines[minor - 1].sentence;
                let (x, y) = major_s
                    .as_implication()
                    .ok_or(CheckError::MajorNotImplication { line, major })?;
                if x == minor_s && *y == l.sentence {
                    Ok(())
                } else {
                    Err(CheckError::MpMismatch { line, major, minor })
                }
            }
        }
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(s) => write!(f, "axiom {s}"),
            Justification::Hypothesis(k) => write!(f, "hyp {k}"),
            Justification::ModusPonens { major, minor } => write!(f, "mp {major} {minor}"),
        }
    }
}

/// `check_deduction` under its operation name.
pub fn check_deduction(d: &Deduction) -> Result<(), CheckError> {
    d.check()
}
