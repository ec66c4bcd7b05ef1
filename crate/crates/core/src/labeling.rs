//! Roman labelings and the independent Roman domination validator.

use std::fmt;

use crate::graph::{Graph, ParseError, Vertex};

/// A vertex label in `{0, 1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[repr(u8)]
pub enum Label {
    #[default]
    Zero = 0,
    One = 1,
    Two = 2,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::Zero, Label::One, Label::Two];

    #[inline]
    pub fn value(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self != Label::Zero
    }

    pub fn from_digit(d: u8) -> Option<Label> {
        match d {
            0 => Some(Label::Zero),
            1 => Some(Label::One),
            2 => Some(Label::Two),
            _ => None,
        }
    }
}

/// One label per vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RomanLabeling(Vec<Label>);

impl RomanLabeling {
    pub fn zeros(n: usize) -> Self {
        RomanLabeling(vec![Label::Zero; n])
    }

    pub fn from_labels(labels: Vec<Label>) -> Self {
        RomanLabeling(labels)
    }

    /// Returns `None` if any entry is outside `{0, 1, 2}`.
    pub fn from_digits(digits: &[u8]) -> Option<Self> {
        digits
            .iter()
            .map(|&d| Label::from_digit(d))
            .collect::<Option<Vec<_>>>()
            .map(RomanLabeling)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn get(&self, v: Vertex) -> Label {
        self.0[v]
    }

    pub fn set(&mut self, v: Vertex, label: Label) {
        self.0[v] = label;
    }

    /// Total weight, the sum of all labels.
    pub fn weight(&self) -> usize {
        self.0.iter().map(|l| l.value()).sum()
    }

    /// Vertices carrying `label`, ascending.
    pub fn class(&self, label: Label) -> Vec<Vertex> {
        (0..self.len()).filter(|&v| self.0[v] == label).collect()
    }

    /// Vertices with a positive label, ascending.
    pub fn positive(&self) -> Vec<Vertex> {
        (0..self.len())
            .filter(|&v| self.0[v].is_positive())
            .collect()
    }

    /// Parses a single line of comma-separated digits. Blank lines and `#`
    /// comments around it are ignored; an empty labeling is the empty line.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let line = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .unwrap_or("");
        if line.is_empty() {
            return Ok(RomanLabeling::default());
        }
        line.split(',')
            .enumerate()
            .map(|(position, tok)| {
                let tok = tok.trim();
                match tok {
                    "0" => Ok(Label::Zero),
                    "1" => Ok(Label::One),
                    "2" => Ok(Label::Two),
                    _ => Err(ParseError::BadLabel {
                        position,
                        label: tok.to_string(),
                    }),
                }
            })
            .collect::<Result<Vec<_>, _>>()
            .map(RomanLabeling)
    }
}

impl fmt::Display for RomanLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", l.value())?;
        }
        Ok(())
    }
}

/// Sum of labels.
pub fn weight(labeling: &RomanLabeling) -> usize {
    labeling.weight()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// Adjacent `u < v` both carry a positive label.
    NotIndependent(Vertex, Vertex),
    /// A 0-labelled vertex without a 2-labelled neighbor.
    Undominated(Vertex),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotIndependent(u, v) => {
                write!(
                    f,
                    "not independent: {u} and {v} are adjacent and both positive"
                )
            }
            Violation::Undominated(v) => {
                write!(
                    f,
                    "undominated: {v} is labelled 0 with no neighbor labelled 2"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks both IRDF conditions and reports every violation.
///
/// Violations are ordered by their smallest vertex; at equal vertex the
/// independence violation comes first.
pub fn validate_irdf(
    graph: &Graph,
    labeling: &RomanLabeling,
) -> Result<ValidationReport, ParseError> {
    if labeling.len() != graph.n() {
        return Err(ParseError::LengthMismatch {
            expected: graph.n(),
            found: labeling.len(),
        });
    }
    let mut violations = Vec::new();
    for v in 0..graph.n() {
        match labeling.get(v) {
            Label::Zero => {
                if !graph
                    .neighbors(v)
                    .iter()
                    .any(|&u| labeling.get(u) == Label::Two)
                {
                    violations.push(Violation::Undominated(v));
                }
            }
            _ => violations.extend(
                graph
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| u > v && labeling.get(u).is_positive())
                    .map(|&u| Violation::NotIndependent(v, u)),
            ),
        }
    }
    Ok(ValidationReport { violations })
}
