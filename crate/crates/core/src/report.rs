//! Witness-bearing verdicts shared by every checker.

use std::fmt;

/// Concrete evidence that a law fails.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Witness {
    /// A tuple of morphism and point names, e.g. `(g,h,x)`.
    Tuple(Vec<String>),
    /// A subset of some carrier, e.g. an open set whose preimage is not open.
    Set(Vec<String>),
}

impl Witness {
    pub fn tuple<I, S>(items: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Witness::Tuple(items.into_iter().map(Into::into).collect())
    }

    pub fn set<I, S>(items: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Witness::Set(items.into_iter().map(Into::into).collect())
    }

    pub fn items(&self) -> &[String] {
        match self {
            Witness::Tuple(v) | Witness::Set(v) => v,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Tuple(v) if v.len() == 1 => write!(f, "{}", v[0]),
            Witness::Tuple(v) => write!(f, "({})", v.join(",")),
            Witness::Set(v) => write!(f, "{{{}}}", v.join(",")),
        }
    }
}

/// Pass iff there are no witnesses.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Verdict {
    pub witnesses: Vec<Witness>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict::default()
    }

    pub fn from_witnesses(mut witnesses: Vec<Witness>) -> Self {
        witnesses.sort();
        witnesses.dedup();
        Verdict { witnesses }
    }

    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn first(&self) -> Option<&Witness> {
        self.witnesses.first()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass");
        }
        write!(f, "FAIL")?;
        for w in &self.witnesses {
            write!(f, " {w}")?;
        }
        Ok(())
    }
}

/// The named laws a checker can report on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    C1,
    C2,
    C3,
    C4,
    GR1,
    GR2,
    GR3,
    GR4,
    C1p,
    C2p,
    C3p,
    C4p,
    GR1p,
    GR2p,
    GR3p,
    /// Each `alpha_g` is a bijection `X_g -> X_{g^-1}` inverse to `alpha_{g^-1}`.
    Bijective,
    G1,
    G2,
    G3,
    M1,
    M2,
}

impl Axiom {
    pub fn label(self) -> &'static str {
        match self {
            Axiom::C1 => "C1",
            Axiom::C2 => "C2",
            Axiom::C3 => "C3",
            Axiom::C4 => "C4",
            Axiom::GR1 => "GR1",
            Axiom::GR2 => "GR2",
            Axiom::GR3 => "GR3",
            Axiom::GR4 => "GR4",
            Axiom::C1p => "C1'",
            Axiom::C2p => "C2'",
            Axiom::C3p => "C3'",
            Axiom::C4p => "C4'",
            Axiom::GR1p => "GR1'",
            Axiom::GR2p => "GR2'",
            Axiom::GR3p => "GR3'",
            Axiom::Bijective => "BIJ",
            Axiom::G1 => "G1",
            Axiom::G2 => "G2",
            Axiom::G3 => "G3",
            Axiom::M1 => "M1",
            Axiom::M2 => "M2",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Per-axiom verdicts, kept in the order the axioms were checked.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    entries: Vec<(Axiom, Verdict)>,
}

impl AxiomReport {
    pub fn push(&mut self, axiom: Axiom, verdict: Verdict) {
        self.entries.push((axiom, verdict));
    }

    pub fn entries(&self) -> &[(Axiom, Verdict)] {
        &self.entries
    }

    pub fn get(&self, axiom: Axiom) -> Option<&Verdict> {
        self.entries
            .iter()
            .find(|(a, _)| *a == axiom)
            .map(|(_, v)| v)
    }

    /// `true` iff `axiom` was checked and passed.
    pub fn holds(&self, axiom: Axiom) -> bool {
        self.get(axiom).is_some_and(Verdict::passed)
    }

    /// `true` iff every listed axiom was checked and passed.
    pub fn all_hold(&self, axioms: &[Axiom]) -> bool {
        axioms.iter().all(|&a| self.holds(a))
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|(_, v)| v.passed())
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, v) in &self.entries {
            writeln!(f, "  {:<5} {}", a.label(), v)?;
        }
        Ok(())
    }
}
