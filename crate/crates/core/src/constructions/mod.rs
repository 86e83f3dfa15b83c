//! Explicit oriented 3-valent m-Cayley regular representations, and the
//! dispatcher choosing the right family for a group and `m`.

mod families;
mod literal;
mod validate;
pub mod z2_tables;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use families::{
    cyclic_general, cyclic_general_correction, cyclic_general_printed, cyclic_m2, klein_general,
    klein_m3, klein_m4, two_generated, two_generated_correction, two_generated_printed, z2_general,
    z2_table,
};
pub use literal::{LiteralEntry, LiteralTable, Relocation};
pub use validate::{single_entry_fixes, validate_table, Violation};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GeneratorSpec};
use crate::mcayley::ConnectionMatrix;

/// A named construction family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "String")]
pub enum Family {
    Z2Table,
    Z2General,
    CyclicM2,
    CyclicGeneral,
    KleinM3,
    KleinM4,
    KleinGeneral,
    TwoGenerated,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Z2Table,
        Family::Z2General,
        Family::CyclicM2,
        Family::CyclicGeneral,
        Family::KleinM3,
        Family::KleinM4,
        Family::KleinGeneral,
        Family::TwoGenerated,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Z2Table => "z2-table",
            Family::Z2General => "z2-general",
            Family::CyclicM2 => "cyclic-m2",
            Family::CyclicGeneral => "cyclic-general",
            Family::KleinM3 => "klein-m3",
            Family::KleinM4 => "klein-m4",
            Family::KleinGeneral => "klein-general",
            Family::TwoGenerated => "two-gen",
        }
    }

    /// Emits the table, or a precondition error if the family does not
    /// apply to `(group, spec, m)`.
    pub fn emit(
        self,
        group: &FiniteGroup,
        spec: &GeneratorSpec,
        m: usize,
    ) -> Result<ConnectionMatrix> {
        let fixed_m = |want: usize| {
            if m == want {
                Ok(())
            } else {
                Err(Error::Precondition(format!(
                    "{} requires m = {want}",
                    self.name()
                )))
            }
        };
        match self {
            Family::Z2Table => z2_table(group, m),
            Family::Z2General => z2_general(group, m),
            Family::CyclicM2 => fixed_m(2).and_then(|_| cyclic_m2(group, spec)),
            Family::CyclicGeneral => cyclic_general(group, spec, m),
            Family::KleinM3 => fixed_m(3).and_then(|_| klein_m3(group, spec)),
            Family::KleinM4 => fixed_m(4).and_then(|_| klein_m4(group, spec)),
            Family::KleinGeneral => klein_general(group, spec, m),
            Family::TwoGenerated => two_generated(group, &spec.with_long_x(group), m),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl From<Family> for String {
    fn from(f: Family) -> String {
        f.name().to_string()
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown family '{s}'")))
    }
}

/// Cases with no oriented 3-valent m-semiregular representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExceptionCase {
    /// `G ≅ Z₂`, `m ≤ 4`.
    Z2SmallM,
    /// `G ≅ Z₃` or `Z₄`, `m = 2`.
    SmallCyclicM2,
    /// `G ≅ Z₂²`, `m = 2`.
    KleinM2,
    /// Trivial `G`: existence is an open question.
    TrivialGroupOpen,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionVerdict {
    pub case: ExceptionCase,
    pub message: String,
}

impl ExceptionVerdict {
    fn new(case: ExceptionCase) -> Self {
        let message = match case {
            ExceptionCase::Z2SmallM => {
                "excluded case: G = Z2 (o(x) = 2) with m <= 4 admits no oriented 3-valent m-semiregular representation"
            }
            ExceptionCase::SmallCyclicM2 => {
                "excluded case: cyclic G with o(x) = 3 or 4 and m = 2 admits no oriented 3-valent m-semiregular representation"
            }
            ExceptionCase::KleinM2 => {
                "excluded case: G = Z2 x Z2 with m = 2 admits no oriented 3-valent m-semiregular representation"
            }
            ExceptionCase::TrivialGroupOpen => {
                "open: for trivial G this asks for a 3-valent oriented digraph with trivial automorphism group"
            }
        };
        ExceptionVerdict {
            case,
            message: message.to_string(),
        }
    }
}

impl fmt::Display for ExceptionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// A dispatched construction: the family used, the generators it was
/// applied to (possibly reordered), and the table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub family: Family,
    pub spec: GeneratorSpec,
    pub matrix: ConnectionMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dispatch {
    Built(Construction),
    Exception(ExceptionVerdict),
}

impl Dispatch {
    pub fn built(self) -> Option<Construction> {
        match self {
            Dispatch::Built(c) => Some(c),
            Dispatch::Exception(_) => None,
        }
    }
}

/// Picks the family for `(group, spec, m)`, or reports an excluded case.
///
/// If `x` or `y` alone generates the group the cyclic families are used
/// with that element. Otherwise the two-generator family is used with a
/// generator of order at least 3 as `x`; when both generators are
/// involutions (a dihedral group) `x` is replaced by `xy`.
pub fn construct_omsr(group: &FiniteGroup, spec: &GeneratorSpec, m: usize) -> Result<Dispatch> {
    if m < 2 {
        return Err(Error::Precondition(format!(
            "m must be at least 2, got {m}"
        )));
    }
    if !spec.generates(group) {
        return Err(Error::SpecDoesNotGenerate);
    }
    let n = group.order();
    let exception = |case| Ok(Dispatch::Exception(ExceptionVerdict::new(case)));
    if n == 1 {
        return exception(ExceptionCase::TrivialGroupOpen);
    }
    let built = |family: Family, spec: GeneratorSpec| -> Result<Dispatch> {
        let matrix = family.emit(group, &spec, m)?;
        Ok(Dispatch::Built(Construction {
            family,
            spec,
            matrix,
        }))
    };

    let cyclic_gen = spec
        .elements()
        .into_iter()
        .find(|&g| group.element_order(g) == n);
    if let Some(x) = cyclic_gen {
        let spec = GeneratorSpec::single(x);
        return match (n, m) {
            (2, 0..=4) => exception(ExceptionCase::Z2SmallM),
            (2, 5..=10) => built(Family::Z2Table, spec),
            (2, _) => built(Family::Z2General, spec),
            (3 | 4, 2) => exception(ExceptionCase::SmallCyclicM2),
            (_, 2) => built(Family::CyclicM2, spec),
            _ => built(Family::CyclicGeneral, spec),
        };
    }

    if group.is_klein_four() {
        return match m {
            2 => exception(ExceptionCase::KleinM2),
            3 => built(Family::KleinM3, *spec),
            4 => built(Family::KleinM4, *spec),
            _ => built(Family::KleinGeneral, *spec),
        };
    }

    // Both generators present here, since one alone does not generate.
    let y = spec.y.ok_or(Error::SpecDoesNotGenerate)?;
    let mut spec = spec.with_long_x(group);
    if group.element_order(spec.x) < 3 {
        spec = GeneratorSpec::pair(group.mul(spec.x, y), y);
    }
    built(Family::TwoGenerated, spec)
}
