//! Command-line grammar.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use fincat::TieBreak;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TieBreakArg {
    Normal,
    Reversed,
}

impl From<TieBreakArg> for TieBreak {
    fn from(t: TieBreakArg) -> Self {
        match t {
            TieBreakArg::Normal => TieBreak::Normal,
            TieBreakArg::Reversed => TieBreak::Reversed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Right,
    Left,
    Bilateral,
}

impl From<SideArg> for multsys::Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Right => multsys::Side::Right,
            SideArg::Left => multsys::Side::Left,
            SideArg::Bilateral => multsys::Side::Bilateral,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum HandArg {
    Right,
    Left,
}

impl From<HandArg> for deligne::Hand {
    fn from(h: HandArg) -> Self {
        match h {
            HandArg::Right => deligne::Hand::Right,
            HandArg::Left => deligne::Hand::Left,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Localizing,
    Deligne,
    Gv,
}

#[derive(Debug, Parser)]
#[command(
    name = "locfrac",
    version,
    about = "Localization of finite categories and bounded derived categories"
)]
pub struct Cli {
    /// Emit a JSON report (the only output mode; accepted for compatibility).
    #[arg(long, global = true)]
    pub json: bool,
    /// Maximum number of enumeration steps.
    #[arg(long, global = true, default_value_t = 5_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = TieBreakArg::Normal)]
    pub tie_break: TieBreakArg,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every category, functor, diagram and complex in a fixture.
    Validate { fixture: PathBuf },
    /// Check the multiplicative-system axioms for a class.
    CheckSystem {
        fixture: PathBuf,
        class: String,
        /// Declared side; inferred from the axioms when omitted.
        #[arg(long, value_enum)]
        side: Option<SideArg>,
    },
    /// Hom set of the localization between two objects.
    Hom {
        fixture: PathBuf,
        class: String,
        x: String,
        y: String,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        formula: SideArg,
        /// Declared side; inferred from the axioms when omitted.
        #[arg(long, value_enum)]
        side: Option<SideArg>,
    },
    /// Materialize the localization, optionally writing it as a fixture.
    Localize {
        fixture: PathBuf,
        class: String,
        /// Declared side; inferred from the axioms when omitted.
        #[arg(long, value_enum)]
        side: Option<SideArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Morphisms between two diagrams read as ind- or pro-objects.
    IndHom {
        fixture: PathBuf,
        x: String,
        y: String,
    },
    /// Deligne's localized functor at one object or all of them.
    Deligne {
        fixture: PathBuf,
        #[arg(long)]
        functor: String,
        #[arg(long)]
        system: String,
        #[arg(long)]
        system_target: String,
        #[arg(long)]
        object: Option<String>,
        #[arg(long, value_enum, default_value_t = HandArg::Right)]
        side: HandArg,
    },
    /// Enumerate both sides of a universal property and compare them.
    ProbeUniversal {
        fixture: PathBuf,
        #[arg(long)]
        system: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Localizing)]
        mode: ModeArg,
        #[arg(long)]
        functor: Option<String>,
        #[arg(long)]
        system_target: Option<String>,
        /// `identity` or `const:<object>`.
        #[arg(long, default_value = "identity")]
        target: String,
    },
    /// Transport an adjunction to the localizations.
    CheckAdjunction {
        fixture: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        system: String,
        #[arg(long)]
        system_target: String,
    },
    /// Compare the localized Hom bifunctor with the localization's Hom sets.
    HomBifunctor {
        fixture: PathBuf,
        #[arg(long)]
        system: String,
        x: Option<String>,
        y: Option<String>,
    },
    /// Ext between modules over a finite chain ring.
    Ext {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        src: String,
        #[arg(long)]
        tgt: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        n: String,
    },
    /// Hom in the bounded derived category between two complexes.
    DerivedHom {
        fixture: PathBuf,
        x: String,
        y: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        n: String,
    },
    /// Amalgamate two resolution replacements of the triangle on a map.
    Amalgamate {
        fixture: PathBuf,
        map: String,
        #[arg(long, value_delimiter = ',', default_values_t = vec![2, 4])]
        windows: Vec<i32>,
    },
    /// Run every check declared in a corpus directory.
    RunCorpus { dir: PathBuf },
}

impl Command {
    pub fn verb(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::CheckSystem { .. } => "check-system",
            Command::Hom { .. } => "hom",
            Command::Localize { .. } => "localize",
            Command::IndHom { .. } => "ind-hom",
            Command::Deligne { .. } => "deligne",
            Command::ProbeUniversal { .. } => "probe-universal",
            Command::CheckAdjunction { .. } => "check-adjunction",
            Command::HomBifunctor { .. } => "hom-bifunctor",
            Command::Ext { .. } => "ext",
            Command::DerivedHom { .. } => "derived-hom",
            Command::Amalgamate { .. } => "amalgamate",
            Command::RunCorpus { .. } => "run-corpus",
        }
    }
}
