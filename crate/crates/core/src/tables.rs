//! CSV renderings of the capacity, coefficient, efficiency and variance
//! tables and of the exact balance redundancy curve.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::asymptotics::{
    capacity, efficiency_eta, gamma_binary, gamma_quaternary, leading_coefficient,
    state_dependent_rate, state_independent_rate, two_mode_rate, BlockRate,
};
use crate::counting::{balance_redundancy, Boundary};
use crate::error::{domain, Error, Result};
use crate::UNBOUNDED;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableId {
    /// `C_2(m)` and `C_4(m)`.
    Capacity,
    /// `A_2(m)` and `A_4(m)`.
    Coefficient,
    /// `eta(m)`.
    Eta,
    /// `R_{m,0} / C_4(m)` by `n` and `m`.
    TwoMode,
    /// `R_{m,1} / C_4(m)` by `n` and `m`.
    StateIndependent,
    /// `R_{m,2} / C_4(m)` by `n` and `m`.
    StateDependent,
    /// `gamma_2(m)` and `gamma_4(m)`.
    Gamma,
}

impl TableId {
    pub const ALL: [TableId; 7] = [
        Self::Capacity,
        Self::Coefficient,
        Self::Eta,
        Self::TwoMode,
        Self::StateIndependent,
        Self::StateDependent,
        Self::Gamma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Capacity => "capacity",
            Self::Coefficient => "coefficient",
            Self::Eta => "eta",
            Self::TwoMode => "two-mode",
            Self::StateIndependent => "state-indep",
            Self::StateDependent => "state-dep",
            Self::Gamma => "gamma",
        }
    }

    /// Decimals used when no precision is requested, matching the
    /// published tables.
    pub fn default_decimals(self) -> usize {
        match self {
            Self::Capacity | Self::Coefficient | Self::Gamma => 4,
            Self::Eta | Self::TwoMode | Self::StateIndependent | Self::StateDependent => 3,
        }
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| domain(format!("unknown table {s:?}")))
    }
}

impl std::fmt::Display for TableId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// How floating-point cells are printed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Precision {
    /// The table's own default.
    #[default]
    Default,
    Decimals(usize),
    /// Shortest representation that round-trips.
    Full,
}

impl FromStr for Precision {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Self::Full),
            "default" => Ok(Self::Default),
            d => d
                .parse()
                .map(Self::Decimals)
                .map_err(|_| domain(format!("precision {s:?} is not a number or \"full\""))),
        }
    }
}

fn cell(v: f64, precision: Precision, default: usize) -> String {
    match precision {
        Precision::Default => format!("{v:.default$}"),
        Precision::Decimals(d) => format!("{v:.d$}"),
        Precision::Full => format!("{v}"),
    }
}

fn row_label(m: usize) -> String {
    if m == UNBOUNDED {
        "inf".into()
    } else {
        m.to_string()
    }
}

/// A table with its row values (`m`, or `n` for the rate tables) and, for
/// the rate tables, the `m` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableSpec {
    pub id: TableId,
    pub rows: Vec<usize>,
    pub columns: Vec<usize>,
}

impl TableSpec {
    /// The rows and columns of the published table.
    pub fn published(id: TableId) -> Self {
        let (rows, columns) = match id {
            TableId::Capacity | TableId::Coefficient => ((1..=6).collect(), vec![]),
            TableId::Eta => ((2..=7).collect(), vec![]),
            TableId::TwoMode => ((5..=10).collect(), vec![2, 3, 4]),
            TableId::StateIndependent | TableId::StateDependent => {
                ((5..=10).collect(), vec![1, 2, 3, 4])
            }
            TableId::Gamma => (vec![1, 2, 3, 4, 5, 10, UNBOUNDED], vec![]),
        };
        Self { id, rows, columns }
    }

    /// Header and one `f64` (or `None` for a blank cell) per column, per
    /// row.
    pub fn values(&self) -> Result<(Vec<String>, Vec<TableRow>)> {
        let header: Vec<String> = match self.id {
            TableId::Capacity => vec!["m".into(), "C2".into(), "C4".into()],
            TableId::Coefficient => vec!["m".into(), "A2".into(), "A4".into()],
            TableId::Eta => vec!["m".into(), "eta".into()],
            TableId::Gamma => vec!["m".into(), "gamma2".into(), "gamma4".into()],
            _ => std::iter::once("n".to_string())
                .chain(self.columns.iter().map(|m| format!("m={m}")))
                .collect(),
        };
        let mut rows = Vec::with_capacity(self.rows.len());
        for &r in &self.rows {
            let cells = match self.id {
                TableId::Capacity => vec![
                    Some(capacity(2, r)?.capacity_bits),
                    Some(capacity(4, r)?.capacity_bits),
                ],
                // A_2(1) and gamma_2(1) do not exist; the cell stays blank.
                TableId::Coefficient => vec![
                    (r >= 2).then(|| leading_coefficient(2, r)).transpose()?,
                    Some(leading_coefficient(4, r)?),
                ],
                TableId::Eta => vec![Some(efficiency_eta(r)?)],
                TableId::Gamma => vec![
                    (r >= 2).then(|| gamma_binary(r)).transpose()?,
                    Some(gamma_quaternary(r)?),
                ],
                TableId::TwoMode | TableId::StateIndependent | TableId::StateDependent => {
                    let rate: fn(usize, usize) -> Result<BlockRate> = match self.id {
                        TableId::TwoMode => two_mode_rate,
                        TableId::StateIndependent => state_independent_rate,
                        _ => state_dependent_rate,
                    };
                    self.columns
                        .iter()
                        .map(|&m| rate(m, r).and_then(|b| b.efficiency(m)).ok())
                        .collect()
                }
            };
            rows.push((r, cells));
        }
        Ok((header, rows))
    }

    pub fn to_csv(&self, precision: Precision) -> Result<String> {
        let (header, rows) = self.values()?;
        let decimals = self.id.default_decimals();
        let mut out = header.join(",");
        out.push('\n');
        for (r, cells) in rows {
            out.push_str(&row_label(r));
            for c in cells {
                out.push(',');
                if let Some(v) = c {
                    out.push_str(&cell(v, precision, decimals));
                }
            }
            out.push('\n');
        }
        Ok(out)
    }
}

/// Unbalance bounds plotted by default.
/// Row label and its cells; `None` is a blank cell.
pub type TableRow = (usize, Vec<Option<f64>>);

pub const FIGURE1_BOUNDS: [f64; 3] = [0.05, 0.10, 0.15];

/// Exact balance redundancy `r(a, n)` for every `a` and `n` in
/// `n_min..=n_max`; columns `n,a,r`, grouped by `a`. Cells where no weight
/// is admitted are left blank.
pub fn figure1_csv(
    bounds: &[f64],
    n_min: usize,
    n_max: usize,
    boundary: Boundary,
    precision: Precision,
) -> Result<String> {
    if n_min < 1 || n_min > n_max {
        return Err(domain(format!("invalid length range {n_min}..={n_max}")));
    }
    let mut out = String::from("n,a,r\n");
    for &a in bounds {
        for n in n_min..=n_max {
            let r = match balance_redundancy(n, a, boundary) {
                Ok(r) => cell(r, precision, 4),
                Err(Error::UndefinedRedundancy(_)) => String::new(),
                Err(e) => return Err(e),
            };
            writeln!(out, "{n},{a},{r}").expect("writing to a String");
        }
    }
    Ok(out)
}
