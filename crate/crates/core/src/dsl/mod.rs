//! The scenario file format.
//!
//! ```text
//! category C
//!   object e
//!   object f
//!   mor g : e -> f
//!   comp g . h = k        # g after h
//! end
//! action X
//!   point 1 2 3
//!   act g 1 = 2
//! end
//! topology mor            # optional; opens of mor(G)
//!   open e g
//!   open e f g
//! end
//! topology space          # optional; opens of X
//!   open empty
//!   open 1 2 3
//! end
//! map j                   # optional; a G-function into this file's action
//!   gfun 1 = 1
//! end
//! ```
//!
//! Identifiers match `[A-Za-z0-9_]+`; `#` starts a comment. An object is its
//! own identity morphism, so `e` names both; `id_e` is accepted as an alias
//! wherever a morphism is expected. Composites with identities are implied.
//! Every composable pair of non-identity morphisms needs a `comp` line. A
//! topology block lists opens one per line, must list the whole carrier,
//! and always contains the empty set.

mod json;
mod parse;
mod text;

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::action::{PartialAction, PointId};
use crate::category::Category;
use crate::topo::{FiniteTopology, TopoError};

pub use json::{
    axioms_json, globalization_json, mediator_json, topo_json, validation_json, verdict_json,
};
pub use parse::{parse, parse_with_category};
pub use text::{globalization_scenario, sanitize_point_names, to_text};

/// Line and column (both 1-based) of a token in the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCode {
    Syntax,
    UnknownId,
    MissingComp,
    DupDef,
    TopNoTotal,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::Syntax => "E_SYNTAX",
            ErrorCode::UnknownId => "E_UNKNOWN_ID",
            ErrorCode::MissingComp => "E_MISSING_COMP",
            ErrorCode::DupDef => "E_DUP_DEF",
            ErrorCode::TopNoTotal => "E_TOP_NO_TOTAL",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{}:{span}: {message}", code.as_str())]
pub struct ParseError {
    pub code: ErrorCode,
    pub span: Span,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(code: ErrorCode, span: Span, message: impl Into<String>) -> Self {
        ParseError {
            code,
            span,
            message: message.into(),
        }
    }
}

/// Opens of a topology block, as written (aliases resolved). The empty set
/// is implicit.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OpenFamily {
    pub opens: Vec<Vec<String>>,
}

impl OpenFamily {
    /// The family as a topology on `labels`.
    pub fn to_topology(&self, labels: &[String]) -> Result<FiniteTopology, TopoError> {
        let index: BTreeMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut sets = vec![FixedBitSet::with_capacity(labels.len())];
        for open in &self.opens {
            let mut s = FixedBitSet::with_capacity(labels.len());
            s.extend(open.iter().map(|p| index[p.as_str()]));
            sets.push(s);
        }
        FiniteTopology::from_opens(labels.to_vec(), &sets)
    }

    /// Every open of `t`, empty set excluded.
    pub fn from_topology(t: &FiniteTopology) -> Self {
        OpenFamily {
            opens: t
                .opens()
                .into_iter()
                .filter(|s| s.count_ones(..) > 0)
                .map(|s| t.set_names(&s))
                .collect(),
        }
    }
}

/// A `map` block: `gfun x = z` sends point `x` of some other action to
/// point `z` of this one.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GMap {
    pub name: String,
    pub pairs: Vec<(String, String)>,
}

/// Where each parsed entity came from. Keys look like `mor g`, `act g 1`,
/// `gfun 1`.
#[derive(Debug, Clone, Default)]
pub struct SourceSpans {
    spans: BTreeMap<String, Span>,
}

impl SourceSpans {
    pub fn get(&self, key: &str) -> Option<Span> {
        self.spans.get(key).copied()
    }

    pub(crate) fn insert(&mut self, key: String, span: Span) {
        self.spans.insert(key, span);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Span)> {
        self.spans.iter().map(|(k, &s)| (k.as_str(), s))
    }
}

/// A parsed scenario file. Equality ignores source spans.
#[derive(Debug, Clone)]
pub struct Scenario {
    /// `None` when the category was supplied by the caller rather than the
    /// file.
    pub category_name: Option<String>,
    pub category: Category,
    /// `None` when the file has no action block; the action is then empty.
    pub action_name: Option<String>,
    pub action: PartialAction,
    pub top_mor: Option<OpenFamily>,
    pub top_space: Option<OpenFamily>,
    pub map: Option<GMap>,
    pub spans: SourceSpans,
}

impl PartialEq for Scenario {
    fn eq(&self, other: &Self) -> bool {
        self.category_name == other.category_name
            && self.category == other.category
            && self.action_name == other.action_name
            && self.action == other.action
            && self.top_mor == other.top_mor
            && self.top_space == other.top_space
            && self.map == other.map
    }
}

impl Eq for Scenario {}

impl Scenario {
    /// A scenario without topologies or map.
    pub fn new(category: Category, action: PartialAction) -> Self {
        Scenario {
            category_name: Some("C".into()),
            category,
            action_name: Some("X".into()),
            action,
            top_mor: None,
            top_space: None,
            map: None,
            spans: SourceSpans::default(),
        }
    }

    /// The morphism topology, discrete when the file has none.
    pub fn mor_topology(&self) -> Result<FiniteTopology, TopoError> {
        match &self.top_mor {
            Some(f) => f.to_topology(self.category.names()),
            None => Ok(FiniteTopology::discrete(self.category.names().to_vec())),
        }
    }

    /// The space topology, discrete when the file has none.
    pub fn space_topology(&self) -> Result<FiniteTopology, TopoError> {
        match &self.top_space {
            Some(f) => f.to_topology(self.action.point_names()),
            None => Ok(FiniteTopology::discrete(self.action.point_names().to_vec())),
        }
    }

    /// Resolves the `map` block against the points of `source`: one value
    /// per source point.
    pub fn resolve_map(&self, source: &PartialAction) -> Result<Vec<PointId>, ParseError> {
        let map = self
            .map
            .as_ref()
            .ok_or_else(|| ParseError::new(ErrorCode::Syntax, Span::default(), "no map block"))?;
        let mut j: Vec<Option<PointId>> = vec![None; source.len()];
        for (x, z) in &map.pairs {
            let span = self.spans.get(&format!("gfun {x}")).unwrap_or_default();
            let px = source.point(x).ok_or_else(|| {
                ParseError::new(
                    ErrorCode::UnknownId,
                    span,
                    format!("unknown source point `{x}`"),
                )
            })?;
            let pz = self.action.point(z).expect("checked at parse time");
            j[px.0] = Some(pz);
        }
        j.into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    let span = self.spans.get("map").unwrap_or_default();
                    ParseError::new(
                        ErrorCode::Syntax,
                        span,
                        format!("no gfun line for point `{}`", source.point_name(PointId(i))),
                    )
                })
            })
            .collect()
    }
}
