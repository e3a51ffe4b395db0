//! Game spec documents: TOML files declaring either a named family with
//! parameters or an explicit symmetric payoff matrix.
//!
//! Money values must be exact: quoted decimals (`"0.15"`), fractions
//! (`"2/3"`), or integers. Bare TOML floats are rejected so nothing silently
//! rounds through f64.

use serde::Deserialize;
use thiserror::Error;

use coopeq_core::rational::ParseMoneyError;
use coopeq_core::{parse_money, Game, GameError, GameFamily, Rat, SymmetryViolation};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("cannot parse spec document: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("field `{field}`: money values must be exact strings or integers (e.g. \"0.15\", \"2/3\", 300), not floats")]
    FloatMoney { field: &'static str },
    #[error("field `{field}`: {source}")]
    Money {
        field: &'static str,
        source: ParseMoneyError,
    },
    #[error("family `{family}` is missing field `{field}`")]
    MissingField {
        family: String,
        field: &'static str,
    },
    #[error("unknown family `{0}` (expected pd, parametric-pd, traveler, public-goods, commons, chicken, or matrix)")]
    UnknownFamily(String),
    #[error("matrix spec needs `strategies` and a square `payoffs` table of matching size")]
    BadMatrix,
    #[error("matrix is not symmetric: permutation {permutation:?} changes player {player}'s payoff at profile {profile:?}")]
    Asymmetric {
        permutation: Vec<usize>,
        profile: Vec<usize>,
        player: usize,
    },
    #[error(transparent)]
    Family(#[from] coopeq_core::FamilyError),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Raw money field: exact string, integer, or a rejected float.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MoneyField {
    Int(i64),
    Text(String),
    Float(f64),
}

impl MoneyField {
    fn to_rat(&self, field: &'static str) -> Result<Rat, SpecError> {
        match self {
            MoneyField::Int(n) => Ok(coopeq_core::rat_i(*n)),
            MoneyField::Text(s) => {
                parse_money(s).map_err(|source| SpecError::Money { field, source })
            }
            MoneyField::Float(_) => Err(SpecError::FloatMoney { field }),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    label: Option<String>,
    family: String,
    // pd / chicken
    t: Option<MoneyField>,
    r: Option<MoneyField>,
    p: Option<MoneyField>,
    s: Option<MoneyField>,
    // parametric-pd
    k: Option<MoneyField>,
    // traveler
    bonus: Option<MoneyField>,
    lo: Option<i64>,
    hi: Option<i64>,
    // public-goods / commons
    players: Option<usize>,
    endowment: Option<MoneyField>,
    alpha: Option<MoneyField>,
    utility: Option<MoneyField>,
    damage: Option<MoneyField>,
    // matrix
    strategies: Option<Vec<String>>,
    payoffs: Option<Vec<Vec<MoneyField>>>,
    /// Player 2's payoff table; defaults to the transpose of `payoffs`.
    payoffs2: Option<Vec<Vec<MoneyField>>>,
}

/// A parsed and validated spec document.
#[derive(Debug)]
#[allow(clippy::large_enum_variant)]
pub enum GameSpecDocument {
    Family { label: Option<String>, family: GameFamily },
    Matrix { label: Option<String>, game: Game },
}

impl GameSpecDocument {
    pub fn label(&self) -> Option<&str> {
        match self {
            GameSpecDocument::Family { label, .. } | GameSpecDocument::Matrix { label, .. } => {
                label.as_deref()
            }
        }
    }

    pub fn family_tag(&self) -> &'static str {
        match self {
            GameSpecDocument::Family { family, .. } => family.tag(),
            GameSpecDocument::Matrix { .. } => "matrix",
        }
    }
}

fn require(
    field: Option<&MoneyField>,
    family: &str,
    name: &'static str,
) -> Result<MoneyField, SpecError> {
    field.cloned().ok_or_else(|| SpecError::MissingField {
        family: family.to_string(),
        field: name,
    })
}

fn require_int(field: Option<i64>, family: &str, name: &'static str) -> Result<i64, SpecError> {
    field.ok_or_else(|| SpecError::MissingField {
        family: family.to_string(),
        field: name,
    })
}

/// Parses a spec document and validates the family invariants (or, for
/// matrix input, symmetry).
pub fn load_game_spec(text: &str) -> Result<GameSpecDocument, SpecError> {
    let raw: RawSpec = toml::from_str(text)?;
    let family_tag = raw.family.as_str();
    let family = match family_tag {
        "pd" => GameFamily::Pd {
            t: require(raw.t.as_ref(), family_tag, "t")?.to_rat("t")?,
            r: require(raw.r.as_ref(), family_tag, "r")?.to_rat("r")?,
            p: require(raw.p.as_ref(), family_tag, "p")?.to_rat("p")?,
            s: require(raw.s.as_ref(), family_tag, "s")?.to_rat("s")?,
        },
        "parametric-pd" => GameFamily::ParametricPd {
            k: require(raw.k.as_ref(), family_tag, "k")?.to_rat("k")?,
        },
        "traveler" => GameFamily::Traveler {
            bonus: require(raw.bonus.as_ref(), family_tag, "bonus")?.to_rat("bonus")?,
            lo: require_int(raw.lo, family_tag, "lo")?,
            hi: require_int(raw.hi, family_tag, "hi")?,
        },
        "public-goods" => GameFamily::PublicGoods {
            players: require_int(raw.players.map(|p| p as i64), family_tag, "players")? as usize,
            endowment: require(raw.endowment.as_ref(), family_tag, "endowment")?
                .to_rat("endowment")?,
            alpha: require(raw.alpha.as_ref(), family_tag, "alpha")?.to_rat("alpha")?,
        },
        "commons" => GameFamily::Commons {
            players: require_int(raw.players.map(|p| p as i64), family_tag, "players")? as usize,
            utility: require(raw.utility.as_ref(), family_tag, "utility")?.to_rat("utility")?,
            damage: require(raw.damage.as_ref(), family_tag, "damage")?.to_rat("damage")?,
        },
        "chicken" => GameFamily::Chicken {
            t: require(raw.t.as_ref(), family_tag, "t")?.to_rat("t")?,
            r: require(raw.r.as_ref(), family_tag, "r")?.to_rat("r")?,
            s: require(raw.s.as_ref(), family_tag, "s")?.to_rat("s")?,
            p: require(raw.p.as_ref(), family_tag, "p")?.to_rat("p")?,
        },
        "matrix" => {
            let strategies = raw.strategies.ok_or(SpecError::BadMatrix)?;
            let payoffs = raw.payoffs.ok_or(SpecError::BadMatrix)?;
            let n = strategies.len();
            let parse_table = |table: &[Vec<MoneyField>]| -> Result<Vec<Vec<Rat>>, SpecError> {
                if n == 0 || table.len() != n || table.iter().any(|row| row.len() != n) {
                    return Err(SpecError::BadMatrix);
                }
                table
                    .iter()
                    .map(|row| row.iter().map(|cell| cell.to_rat("payoffs")).collect())
                    .collect()
            };
            let matrix = parse_table(&payoffs)?;
            let game = match raw.payoffs2 {
                None => Game::symmetric_2p(strategies, matrix)?,
                Some(second) => {
                    let matrix2 = parse_table(&second)?;
                    Game::from_fn(2, strategies, |p| {
                        vec![matrix[p[0]][p[1]].clone(), matrix2[p[0]][p[1]].clone()]
                    })?
                }
            };
            if let Err(SymmetryViolation { permutation, profile, player }) = game.verify_symmetry()
            {
                return Err(SpecError::Asymmetric { permutation, profile, player });
            }
            return Ok(GameSpecDocument::Matrix { label: raw.label, game });
        }
        other => return Err(SpecError::UnknownFamily(other.to_string())),
    };
    family.validate()?;
    Ok(GameSpecDocument::Family { label: raw.label, family })
}
