//! Catalog of Hosoya-triangle identities, each evaluated as an exact chain of
//! integers, with a parallel sweep driver.
//!
//! Several identities are checked in a corrected form because their printed
//! statement does not survive direct evaluation. For those rows the printed
//! ("paper") form stays available through [`Form::Paper`], and a default
//! verification also evaluates it when its hypothesis applies, so every
//! divergence shows up in the report next to the form that holds.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fib::ExactInteger;
use crate::geometry::{self, GeometryError, Run, Side};
use crate::report::decimal;
use crate::triangle::{ClosedForm, Evaluator, GridPoint, TriangleError};

/// Named integer parameters of one identity instance.
pub type Params = BTreeMap<String, i64>;

/// Failing parameter tuples kept verbatim in a [`SweepReport`]; the count is
/// always exact.
pub const MAX_WITNESSES: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("unknown identity `{0}` (known: {known})", known = IdentityId::ALL.iter().map(|i| i.name()).collect::<Vec<_>>().join(", "))]
    Unknown(String),
    #[error("{id}: missing parameter `{name}` (expects {expected})", expected = id.params().join(", "))]
    MissingParam { id: IdentityId, name: String },
    #[error("{id}: unexpected parameter `{name}` (expects {expected})", expected = id.params().join(", "))]
    UnexpectedParam { id: IdentityId, name: String },
    #[error("{id}: parameters violate `{constraint}`")]
    Domain {
        id: IdentityId,
        constraint: &'static str,
    },
    #[error(transparent)]
    Triangle(#[from] TriangleError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    AsStated,
    Corrected,
}

/// Which statement of an identity to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    /// The statement that holds: the printed one for as-stated rows, the
    /// corrected one otherwise.
    #[default]
    Verified,
    /// The printed statement, including its original hypotheses.
    Paper,
}

macro_rules! catalog {
    ($($variant:ident => $name:literal, [$($param:literal),*], $status:ident, $claim:literal;)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum IdentityId { $($variant),* }

        impl IdentityId {
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $(IdentityId::$variant => $name),* }
            }

            /// Parameter names, in the order sweeps enumerate them.
            pub fn params(self) -> &'static [&'static str] {
                match self { $(IdentityId::$variant => &[$($param),*]),* }
            }

            pub fn status(self) -> Status {
                match self { $(IdentityId::$variant => Status::$status),* }
            }

            /// The checked claim, in plain text.
            pub fn claim(self) -> &'static str {
                match self { $(IdentityId::$variant => $claim),* }
            }
        }
    };
}

catalog! {
    RungSum => "RUNG_SUM", ["k", "j"], AsStated,
        "H(k,j) + H(k+2,j+1) = F(k+1)";
    RectangleShift => "RECTANGLE_SHIFT", ["k", "j", "i", "r"], Corrected,
        "H(k,j) - H(k,j+i) = (-1)^r (H(k+2r,j+r) - H(k+2r,j+i+r))";
    RectangleClosed => "RECTANGLE_CLOSED", ["k", "j", "i"], Corrected,
        "H(k,j) - H(k,j+i) = (-1)^(j+1) H(k-2j,i)";
    AltRungAbs => "ALT_RUNG_ABS", ["k", "j", "r", "n"], AsStated,
        "|sum_{t<2n} (-1)^t H(k,j+t)| = |sum_{t<2n} (-1)^t H(k+2r,j+t+r)|";
    EvenRungSum => "EVEN_RUNG_SUM", ["k", "j", "m", "n"], AsStated,
        "sum_{t<2n} H(k+2t,j+t) = sum_{t<2n} H(k+2t,j+m+t)";
    OddRunLength => "ODD_RUN_LENGTH", ["k", "j", "n", "i"], Corrected,
        "H(k+2i,j+i) - H(k,j) = H(k+2i,j+n+i) - H(k,j+n) = H(k+2i,i), i even";
    ColumnDiff => "COLUMN_DIFF", ["r", "k", "j"], AsStated,
        "H(r+k,j) - H(r,j) = F(j) (H(r+k-j+1,1) - H(r-j+1,1))";
    DiagonalSum => "DIAGONAL_SUM", ["k", "j", "m"], AsStated,
        "sum_{i<=m} H(k+i,j+i) = F(k-j) sum_{i<=m} H(j+i+1,1)";
    Cassini => "CASSINI", ["k"], AsStated,
        "H(2k,k) - H(2k,k-1) = (-1)^(k-1)";
    Catalan => "CATALAN", ["k", "j"], AsStated,
        "H(2k,k) - H(2k,k-j) = (-1)^(k-j) H(2j,j)";
    Docagne => "DOCAGNE", ["k", "j"], AsStated,
        "H(k+j+1,k) - H(k+j+1,j) = (-1)^j H(k-j+1,k-j)";
    Johnson => "JOHNSON", ["k", "j", "r", "i", "l"], AsStated,
        "H(k+j,j) - H(r+i,i) = (-1)^l (H(k+j-2l,j-l) - H(r+i-2l,i-l)) = (-1)^i H(k+j-2i,j-i)";
    ZigzagParallel => "ZIGZAG_PARALLEL", ["a", "b", "j"], AsStated,
        "F(a) (F(b-j) - F(b+j)) = F(b) (F(a-j) - F(a+j))";
    LongZigzagAlt => "LONG_ZIGZAG_ALT", ["r", "k", "n", "dir"], AsStated,
        "p2 + p4 + ... + p(n-1) = p(n) - p(1) over a long zigzag (dir 0 = slash first, 1 = backslash first)";
    ZigzagColumnSum => "ZIGZAG_COLUMN_SUM", ["a", "b", "c", "d", "k"], Corrected,
        "sum_{j<2k} F(a+j)F(c+j) = sum_{j<2k} F(b+j)F(d+j) = closed form in n_e = floor((a+c)/2)";
    ZigzagBalance => "ZIGZAG_BALANCE", ["r", "c", "k"], AsStated,
        "left-zigzag sum = right-zigzag sum over the 6k+5 zigzag with apex H(r,c)";
    HockeyStick => "HOCKEY_STICK", ["k", "n", "side"], AsStated,
        "sum of the shaft = blade (side 0 = left, 1 = right)";
    BraidSigned => "BRAID_SIGNED", ["n", "m", "l"], AsStated,
        "sum_{k<=l} H(n-k,m-k) + sum_{1<=k<=l} (-1)^k H(n+k,m+k) = sum_{k<=l} H(n-k,m) + sum_{1<=k<=l} (-1)^k H(n+k,m)";
    BraidNormalized => "BRAID_NORMALIZED", ["m", "r", "l"], AsStated,
        "F(r) S(m,l) = F(m) S(r,l), S(x,l) = sum_{1<=k<=l} (F(x-k) + (-1)^k F(x+k))";
    BraidClosed => "BRAID_CLOSED", ["m", "l"], Corrected,
        "S(m,l) = F(m) ((-1)^l L(l-1) + 1)";
    RhombusDet => "RHOMBUS_DET", ["n", "r"], AsStated,
        "H(n,r) H(n+1,r+1) - H(n,r+1) H(n+1,r) = (-1)^(n-r+1) F(r) F(r+1)";
    TriangleConfig => "TRIANGLE_CONFIG", ["n", "r"], Corrected,
        "H(n+1,r-1) + H(n,r) - H(n+2,r+1) = (-1)^r F(n-2r)";
    GenFibLadder => "GEN_FIB_LADDER", ["d", "n"], AsStated,
        "sum of rung n of the d-th oblique ladder = G(n+2), G(1) = F(d+1), G(2) = F(d), G(t+2) = G(t+1) + G(t)";
}

impl IdentityId {
    /// How the printed statement differs, for corrected rows.
    pub fn paper_form(self) -> Option<&'static str> {
        Some(match self {
            IdentityId::RectangleShift => "sign (-1)^(r+1) instead of (-1)^r",
            IdentityId::RectangleClosed => "sign (-1)^(r+1) for a free r instead of (-1)^(j+1)",
            IdentityId::OddRunLength => "hypothesis: i a positive odd number",
            IdentityId::ZigzagColumnSum => {
                "closed form in F(k+n_e), n_e = floor((a+b)/2), parity of a+b"
            }
            IdentityId::BraidClosed => {
                "F(l) + F(l-2) + 1 for odd l, 5 F(l'-1) F(l') + 1 + (-1)^l' for l = 2l'"
            }
            IdentityId::TriangleConfig => "a + b - c = F(2r-n+1)",
            _ => return None,
        })
    }

    /// Labels of the chain members, in evaluation order.
    pub fn labels(self, form: Form) -> &'static [&'static str] {
        use IdentityId::*;
        match (self, form) {
            (RungSum, _) => &["H(k,j) + H(k+2,j+1)", "F(k+1)"],
            (RectangleShift, Form::Verified) => {
                &["H(k,j) - H(k,j+i)", "(-1)^r (H(k+2r,j+r) - H(k+2r,j+i+r))"]
            }
            (RectangleShift, Form::Paper) => &[
                "H(k,j) - H(k,j+i)",
                "(-1)^(r+1) (H(k+2r,j+r) - H(k+2r,j+i+r))",
            ],
            (RectangleClosed, Form::Verified) => &["H(k,j) - H(k,j+i)", "(-1)^(j+1) H(k-2j,i)"],
            (RectangleClosed, Form::Paper) => &[
                "H(k,j) - H(k,j+i)",
                "(-1)^(r+1) H(k-2j,i) at r = 0",
                "(-1)^(r+1) H(k-2j,i) at r = 1",
            ],
            (AltRungAbs, _) => &["|sum (-1)^t H(k,j+t)|", "|sum (-1)^t H(k+2r,j+t+r)|"],
            (EvenRungSum, _) => &["sum H(k+2t,j+t)", "sum H(k+2t,j+m+t)"],
            (OddRunLength, _) => &[
                "H(k+2i,j+i) - H(k,j)",
                "H(k+2i,j+n+i) - H(k,j+n)",
                "H(k+2i,i)",
            ],
            (ColumnDiff, _) => &["H(r+k,j) - H(r,j)", "F(j) (H(r+k-j+1,1) - H(r-j+1,1))"],
            (DiagonalSum, _) => &["sum H(k+i,j+i)", "F(k-j) sum H(j+i+1,1)"],
            (Cassini, _) => &["H(2k,k) - H(2k,k-1)", "(-1)^(k-1)"],
            (Catalan, _) => &["H(2k,k) - H(2k,k-j)", "(-1)^(k-j) H(2j,j)"],
            (Docagne, _) => &["H(k+j+1,k) - H(k+j+1,j)", "(-1)^j H(k-j+1,k-j)"],
            (Johnson, _) => &[
                "H(k+j,j) - H(r+i,i)",
                "(-1)^l (H(k+j-2l,j-l) - H(r+i-2l,i-l))",
                "(-1)^i H(k+j-2i,j-i)",
            ],
            (ZigzagParallel, _) => &["F(a) (F(b-j) - F(b+j))", "F(b) (F(a-j) - F(a+j))"],
            (LongZigzagAlt, _) => &["p2 + p4 + ... + p(n-1)", "p(n) - p(1)"],
            (ZigzagColumnSum, Form::Verified) => &[
                "sum F(a+j) F(c+j)",
                "sum F(b+j) F(d+j)",
                "closed form, n_e = floor((a+c)/2)",
            ],
            (ZigzagColumnSum, Form::Paper) => &[
                "sum F(a+j) F(c+j)",
                "sum F(b+j) F(d+j)",
                "printed closed form, n_e = floor((a+b)/2)",
            ],
            (ZigzagBalance, _) => &["left zigzag sum", "right zigzag sum"],
            (HockeyStick, _) => &["shaft sum", "blade", "mirrored blade"],
            (BraidSigned, _) => &["left braid signed sum", "right braid signed sum"],
            (BraidNormalized, _) => &["F(r) S(m,l)", "F(m) S(r,l)"],
            (BraidClosed, Form::Verified) => &["S(m,l)", "F(m) ((-1)^l L(l-1) + 1)"],
            (BraidClosed, Form::Paper) => &["S(m,l)", "F(m) (printed piecewise value)"],
            (RhombusDet, _) => &[
                "H(n,r) H(n+1,r+1) - H(n,r+1) H(n+1,r)",
                "(-1)^(n-r+1) F(r) F(r+1)",
            ],
            (TriangleConfig, Form::Verified) => &["a + b - c", "(-1)^r F(n-2r)"],
            (TriangleConfig, Form::Paper) => &["a + b - c", "F(2r-n+1)"],
            (GenFibLadder, _) => &["rung-n sum", "G(n+2)"],
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == norm)
            .ok_or_else(|| IdentityError::Unknown(s.to_string()))
    }
}

impl Serialize for IdentityId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for IdentityId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One member of an evaluated equality chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub label: String,
    #[serde(with = "decimal")]
    pub value: ExactInteger,
}

/// Evaluation of one form of an identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormCheck {
    pub form: Form,
    pub lhs: Term,
    pub rhs: Vec<Term>,
    pub holds: bool,
}

impl FormCheck {
    fn new(id: IdentityId, form: Form, values: Vec<ExactInteger>) -> Self {
        let holds = chain_holds(&values);
        debug_assert!(
            id.labels(form).len() >= values.len(),
            "{id}: unlabelled chain member"
        );
        let mut terms = id
            .labels(form)
            .iter()
            .zip(values)
            .map(|(label, value)| Term {
                label: (*label).to_string(),
                value,
            });
        let lhs = terms.next().expect("chains have at least two members");
        Self {
            form,
            lhs,
            rhs: terms.collect(),
            holds,
        }
    }

    /// Index into `rhs` of the first member that differs from `lhs`.
    pub fn broken_link(&self) -> Option<usize> {
        self.rhs.iter().position(|t| t.value != self.lhs.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub status: Status,
    pub params: Params,
    pub form: Form,
    pub lhs: Term,
    pub rhs: Vec<Term>,
    pub holds: bool,
    /// The other form, where its hypothesis covers these parameters.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternate: Option<FormCheck>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternateSummary {
    pub form: Form,
    pub checked: usize,
    pub failure_count: usize,
    pub witnesses: Vec<Params>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub id: IdentityId,
    pub status: Status,
    pub form: Form,
    /// Inclusive range per parameter, as `lo..hi`.
    pub grid: BTreeMap<String, String>,
    pub instances: usize,
    pub failure_count: usize,
    /// First failing tuples in sorted order, at most [`MAX_WITNESSES`].
    pub failures: Vec<Params>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternate: Option<AlternateSummary>,
    pub elapsed_us: u64,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

fn chain_holds(values: &[ExactInteger]) -> bool {
    values.windows(2).all(|w| w[0] == w[1])
}

fn sign(exponent: i64) -> BigInt {
    if exponent.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn require(ok: bool, constraint: &'static str) -> Result<(), &'static str> {
    if ok {
        Ok(())
    } else {
        Err(constraint)
    }
}

fn is_even(x: i64) -> bool {
    x.rem_euclid(2) == 0
}

/// Validity domain of `id` under `form`. Arguments follow `id.params()`.
fn domain(id: IdentityId, form: Form, v: &[i64]) -> Result<(), &'static str> {
    use IdentityId::*;
    match (id, v) {
        (RungSum, &[k, j]) => require(0 <= j && j <= k, "0 <= j <= k"),
        (RectangleShift, &[k, j, i, r]) => {
            require(j >= 0 && i >= 0, "i, j >= 0")?;
            require(j + i <= k, "j + i <= k")?;
            require(r >= 0, "r >= 0")
        }
        (RectangleClosed, &[k, j, i]) => {
            require(j >= 0 && i >= 0, "i, j >= 0")?;
            require(2 * j + i <= k, "2j + i <= k")
        }
        (AltRungAbs, &[k, j, r, n]) => {
            require(r >= 1 && k >= 1, "r, k > 0")?;
            require(j >= 0, "j >= 0")?;
            require(n >= 1 && 2 * n - 1 <= k, "0 < 2n - 1 <= k")?;
            require(j + 2 * n - 1 <= k, "j + 2n - 1 <= k")
        }
        (EvenRungSum, &[k, j, m, n]) => {
            require(m >= 1 && k >= 1, "m, k > 0")?;
            require(j >= 0, "j >= 0")?;
            require(n >= 1 && 2 * n - 1 <= k, "0 < 2n - 1 <= k")?;
            require(j + m <= k, "j + m <= k")
        }
        (OddRunLength, &[k, j, n, i]) => {
            require(j >= 0 && n >= 0, "j, n >= 0")?;
            require(j + n <= k, "j + n <= k")?;
            match form {
                Form::Verified => require(i >= 1 && is_even(i), "i a positive even number"),
                Form::Paper => require(i >= 1 && !is_even(i), "i a positive odd number"),
            }
        }
        (ColumnDiff, &[r, k, j]) => {
            require(j >= 1 && k >= 1, "j, k > 0")?;
            require(r >= j, "r >= j")
        }
        (DiagonalSum, &[k, j, m]) => {
            require(j >= 0 && k > j, "0 <= j < k")?;
            require(m >= 0, "m >= 0")
        }
        (Cassini, &[k]) => require(k >= 1, "k >= 1"),
        (Catalan, &[k, j]) => require(k >= 1 && 0 <= j && j <= k, "0 <= j <= k, k >= 1"),
        (Docagne, &[k, j]) => require(0 <= j && j <= k, "0 <= j <= k"),
        (Johnson, &[k, j, r, i, l]) => {
            require(k >= 0 && r >= 0, "k, r >= 0")?;
            require(k + j == r + i, "k + j = r + i")?;
            require(0 <= i && i < j, "0 <= i < j")?;
            require(0 <= l && l <= i, "0 <= l <= i")?;
            require(i <= k, "i <= k")
        }
        (ZigzagParallel, &[a, b, j]) => {
            require(a >= 1 && b >= 1, "a, b > 0")?;
            require(1 <= j && j <= a.min(b), "1 <= j <= min(a, b)")
        }
        (LongZigzagAlt, &[r, k, n, dir]) => {
            require(0 <= k && k <= r, "0 <= k <= r")?;
            require(n >= 3 && !is_even(n), "n odd and >= 3")?;
            require(dir == 0 || dir == 1, "dir in {0, 1}")
        }
        (ZigzagColumnSum, &[a, b, c, d, k]) => {
            require(a >= 1 && b >= 1 && c >= 1 && d >= 1, "a, b, c, d > 0")?;
            require(a + c == b + d, "a + c = b + d")?;
            require(k >= 1, "k >= 1")
        }
        (ZigzagBalance, &[r, c, k]) => {
            require(2 <= c && c <= r - 2, "2 <= c <= r - 2")?;
            require(k >= 1, "k >= 1")
        }
        (HockeyStick, &[k, n, side]) => {
            require(k >= 2, "k >= 2")?;
            require(n >= 1, "n >= 1")?;
            require(side == 0 || side == 1, "side in {0, 1}")
        }
        (BraidSigned, &[n, m, l]) => {
            require(0 <= m && m <= n, "0 <= m <= n")?;
            require(0 <= l && l <= m.min(n - m), "0 <= l <= min(m, n - m)")
        }
        (BraidNormalized, &[m, r, l]) => {
            require(l >= 1, "l >= 1")?;
            require(m > l && r > l, "m, r >= l + 1")
        }
        (BraidClosed, &[m, l]) => {
            require(l >= 1, "l >= 1")?;
            require(m > l, "m >= l + 1")
        }
        (RhombusDet, &[n, r]) => require(n >= 1 && 0 <= r && r < n, "0 <= r < n"),
        (TriangleConfig, &[n, r]) => require(1 <= r && r <= n, "1 <= r <= n"),
        (GenFibLadder, &[d, n]) => require(d >= 1 && n >= 1, "d, n >= 1"),
        _ => unreachable!("argument count fixed by params()"),
    }
}

fn braid_s(ev: &dyn Evaluator, x: i64, l: i64) -> Result<ExactInteger, TriangleError> {
    let mut total = BigInt::zero();
    for k in 1..=l {
        total += ev.fib(x - k)? + sign(k) * ev.fib(x + k)?;
    }
    Ok(total)
}

/// Correct closed form of `sum_{j<2k} F(a+j) F(c+j)`, which depends only on
/// `s = a + c`.
fn column_sum_closed(ev: &dyn Evaluator, s: i64, k: i64) -> Result<ExactInteger, TriangleError> {
    let ne = s.div_euclid(2);
    let top = ne + 2 * k;
    Ok(if is_even(s) {
        ev.fib(top)? * ev.fib(top - 1)? - ev.fib(ne)? * ev.fib(ne - 1)?
    } else {
        ev.fib(top)?.pow(2) - ev.fib(ne)?.pow(2)
    })
}

fn column_sum_printed(
    ev: &dyn Evaluator,
    a: i64,
    b: i64,
    k: i64,
) -> Result<ExactInteger, TriangleError> {
    let ne = (a + b).div_euclid(2);
    Ok(if is_even(a + b) {
        ev.fib(ne + k)? * ev.fib(ne + k - 1)? - ev.fib(ne)? * ev.fib(ne - 1)?
    } else {
        ev.fib(k + ne)?.pow(2) - ev.fib(ne)?.pow(2)
    })
}

fn braid_printed(ev: &dyn Evaluator, l: i64) -> Result<ExactInteger, TriangleError> {
    Ok(if is_even(l) {
        let lp = l / 2;
        BigInt::from(5) * ev.fib(lp - 1)? * ev.fib(lp)? + BigInt::one() + sign(lp)
    } else {
        ev.fib(l)? + ev.fib(l - 2)? + BigInt::one()
    })
}

fn sum_points(
    ev: &dyn Evaluator,
    points: impl IntoIterator<Item = GridPoint>,
) -> Result<ExactInteger, TriangleError> {
    let mut total = BigInt::zero();
    for p in points {
        total += ev.at(p)?;
    }
    Ok(total)
}

/// Evaluates the chain of `id` under `form`. Assumes the domain holds.
fn evaluate(
    id: IdentityId,
    form: Form,
    ev: &dyn Evaluator,
    v: &[i64],
) -> Result<Vec<ExactInteger>, IdentityError> {
    use IdentityId::*;
    let h = |r: i64, k: i64| ev.h(r, k);
    let f = |n: i64| ev.fib(n);
    let paper = form == Form::Paper;
    let chain = match (id, v) {
        (RungSum, &[k, j]) => vec![h(k, j)? + h(k + 2, j + 1)?, f(k + 1)?],
        (RectangleShift, &[k, j, i, r]) => {
            let top = h(k, j)? - h(k, j + i)?;
            let shifted = h(k + 2 * r, j + r)? - h(k + 2 * r, j + i + r)?;
            let exponent = if paper { r + 1 } else { r };
            vec![top, sign(exponent) * shifted]
        }
        (RectangleClosed, &[k, j, i]) => {
            let top = h(k, j)? - h(k, j + i)?;
            let base = h(k - 2 * j, i)?;
            if paper {
                vec![top, -base.clone(), base]
            } else {
                vec![top, sign(j + 1) * base]
            }
        }
        (AltRungAbs, &[k, j, r, n]) => {
            let mut upper = BigInt::zero();
            let mut lower = BigInt::zero();
            for t in 0..2 * n {
                upper += sign(t) * h(k, j + t)?;
                lower += sign(t) * h(k + 2 * r, j + t + r)?;
            }
            vec![upper.abs(), lower.abs()]
        }
        (EvenRungSum, &[k, j, m, n]) => {
            let mut first = BigInt::zero();
            let mut second = BigInt::zero();
            for t in 0..2 * n {
                first += h(k + 2 * t, j + t)?;
                second += h(k + 2 * t, j + m + t)?;
            }
            vec![first, second]
        }
        (OddRunLength, &[k, j, n, i]) => vec![
            h(k + 2 * i, j + i)? - h(k, j)?,
            h(k + 2 * i, j + n + i)? - h(k, j + n)?,
            h(k + 2 * i, i)?,
        ],
        (ColumnDiff, &[r, k, j]) => vec![
            h(r + k, j)? - h(r, j)?,
            f(j)? * (h(r + k - j + 1, 1)? - h(r - j + 1, 1)?),
        ],
        (DiagonalSum, &[k, j, m]) => {
            let mut diag = BigInt::zero();
            let mut second = BigInt::zero();
            for i in 0..=m {
                diag += h(k + i, j + i)?;
                second += h(j + i + 1, 1)?;
            }
            vec![diag, f(k - j)? * second]
        }
        (Cassini, &[k]) => vec![h(2 * k, k)? - h(2 * k, k - 1)?, sign(k - 1)],
        (Catalan, &[k, j]) => vec![h(2 * k, k)? - h(2 * k, k - j)?, sign(k - j) * h(2 * j, j)?],
        (Docagne, &[k, j]) => vec![
            h(k + j + 1, k)? - h(k + j + 1, j)?,
            sign(j) * h(k - j + 1, k - j)?,
        ],
        (Johnson, &[k, j, r, i, l]) => vec![
            h(k + j, j)? - h(r + i, i)?,
            sign(l) * (h(k + j - 2 * l, j - l)? - h(r + i - 2 * l, i - l)?),
            sign(i) * h(k + j - 2 * i, j - i)?,
        ],
        (ZigzagParallel, &[a, b, j]) => vec![
            f(a)? * (f(b - j)? - f(b + j)?),
            f(b)? * (f(a - j)? - f(a + j)?),
        ],
        (LongZigzagAlt, &[r, k, n, dir]) => {
            let first = if dir == 0 { Run::Slash } else { Run::Backslash };
            let zigzag = geometry::long_zigzag(GridPoint::new(r, k)?, n as usize, first)?;
            let values = zigzag
                .coords()
                .map(|p| ev.at(p))
                .collect::<Result<Vec<_>, _>>()?;
            let alternating: BigInt = values.iter().skip(1).step_by(2).sum();
            let span = &values[values.len() - 1] - &values[0];
            vec![alternating, span]
        }
        (ZigzagColumnSum, &[a, b, c, d, k]) => {
            let mut first = BigInt::zero();
            let mut second = BigInt::zero();
            for j in 0..2 * k {
                first += f(a + j)? * f(c + j)?;
                second += f(b + j)? * f(d + j)?;
            }
            let closed = if paper {
                column_sum_printed(ev, a, b, k)?
            } else {
                column_sum_closed(ev, a + c, k)?
            };
            vec![first, second, closed]
        }
        (ZigzagBalance, &[r, c, k]) => {
            let set = geometry::zigzag_6k5(GridPoint::new(r, c)?, k as usize)?;
            let side = |roles: [&str; 5]| {
                sum_points(
                    ev,
                    set.points
                        .iter()
                        .filter(|p| p.role.as_deref().is_some_and(|r| roles.contains(&r)))
                        .map(|p| p.point),
                )
            };
            vec![side(geometry::LEFT_ZIGZAG)?, side(geometry::RIGHT_ZIGZAG)?]
        }
        (HockeyStick, &[k, n, side]) => {
            let side = if side == 0 { Side::Left } else { Side::Right };
            let stick = geometry::hockey_stick(k, n as usize, side)?;
            let shaft = sum_points(
                ev,
                stick
                    .points
                    .iter()
                    .filter(|p| p.role.as_deref().is_some_and(|r| r.starts_with('s')))
                    .map(|p| p.point),
            )?;
            let mut chain = vec![shaft];
            // Expected blade first; in the centre both candidates follow.
            let expected = if is_even(n) == (side == Side::Left) {
                "b_L"
            } else {
                "b_R"
            };
            let other = if expected == "b_L" { "b_R" } else { "b_L" };
            for role in [expected, other] {
                if let Some(p) = stick.get(role) {
                    chain.push(ev.at(p.point)?);
                }
            }
            chain
        }
        (BraidSigned, &[n, m, l]) => {
            let mut left = BigInt::zero();
            let mut right = BigInt::zero();
            for k in 0..=l {
                left += h(n - k, m - k)?;
                right += h(n - k, m)?;
            }
            for k in 1..=l {
                left += sign(k) * h(n + k, m + k)?;
                right += sign(k) * h(n + k, m)?;
            }
            vec![left, right]
        }
        (BraidNormalized, &[m, r, l]) => {
            vec![f(r)? * braid_s(ev, m, l)?, f(m)? * braid_s(ev, r, l)?]
        }
        (BraidClosed, &[m, l]) => {
            let factor = if paper {
                braid_printed(ev, l)?
            } else {
                sign(l) * ev.lucas(l - 1)? + BigInt::one()
            };
            vec![braid_s(ev, m, l)?, f(m)? * factor]
        }
        (RhombusDet, &[n, r]) => vec![
            h(n, r)? * h(n + 1, r + 1)? - h(n, r + 1)? * h(n + 1, r)?,
            sign(n - r + 1) * f(r)? * f(r + 1)?,
        ],
        (TriangleConfig, &[n, r]) => {
            let combo = h(n + 1, r - 1)? + h(n, r)? - h(n + 2, r + 1)?;
            let rhs = if paper {
                f(2 * r - n + 1)?
            } else {
                sign(r) * f(n - 2 * r)?
            };
            vec![combo, rhs]
        }
        (GenFibLadder, &[d, n]) => {
            let rungs = geometry::oblique_ladder(d, n as usize)?;
            let last = rungs.last().expect("n >= 1 rungs");
            let rung_sum = sum_points(ev, last.points.iter().map(|p| p.point))?;
            let (mut g1, mut g2) = (f(d + 1)?, f(d)?);
            for _ in 0..n {
                let next = &g1 + &g2;
                g1 = std::mem::replace(&mut g2, next);
            }
            vec![rung_sum, g2]
        }
        _ => unreachable!("argument count fixed by params()"),
    };
    Ok(chain)
}

fn ordered_args(id: IdentityId, params: &Params) -> Result<Vec<i64>, IdentityError> {
    if let Some(extra) = params.keys().find(|k| !id.params().contains(&k.as_str())) {
        return Err(IdentityError::UnexpectedParam {
            id,
            name: extra.clone(),
        });
    }
    id.params()
        .iter()
        .map(|name| {
            params
                .get(*name)
                .copied()
                .ok_or_else(|| IdentityError::MissingParam {
                    id,
                    name: name.to_string(),
                })
        })
        .collect()
}

fn to_params(id: IdentityId, v: &[i64]) -> Params {
    id.params()
        .iter()
        .zip(v)
        .map(|(name, value)| (name.to_string(), *value))
        .collect()
}

fn other_form(id: IdentityId, form: Form) -> Option<Form> {
    if id.status() == Status::AsStated {
        return None;
    }
    Some(match form {
        Form::Verified => Form::Paper,
        Form::Paper => Form::Verified,
    })
}

fn effective_form(id: IdentityId, form: Form) -> Form {
    // As-stated rows have a single statement.
    if id.status() == Status::AsStated {
        Form::Verified
    } else {
        form
    }
}

fn describe(id: IdentityId, v: &[i64], primary: &FormCheck, alt: Option<&FormCheck>) -> String {
    let mut parts = Vec::new();
    match primary.broken_link() {
        None => parts.push("holds".to_string()),
        Some(idx) => parts.push(format!(
            "fails at `{}`: {} != {}",
            primary.rhs[idx].label, primary.lhs.value, primary.rhs[idx].value
        )),
    }
    if id == IdentityId::HockeyStick {
        let side = if v[2] == 0 { Side::Left } else { Side::Right };
        parts.push(format!(
            "case {}",
            geometry::hockey_case(v[0], v[1] as usize, side)
        ));
    }
    if id == IdentityId::ZigzagParallel && !primary.holds {
        parts.push(
            "for even j, F(x+j) - F(x-j) = F(j) L(x) is not proportional to F(x)".to_string(),
        );
    }
    if let (Some(alt), Some(printed)) = (alt, id.paper_form()) {
        let verdict = if alt.holds { "holds" } else { "fails" };
        let which = match alt.form {
            Form::Paper => format!("paper-stated form ({printed}) {verdict}"),
            Form::Verified => format!("corrected form {verdict}"),
        };
        parts.push(which);
    } else if let (Some(printed), Form::Verified) = (id.paper_form(), primary.form) {
        parts.push(format!(
            "paper-stated form ({printed}) not applicable to these parameters"
        ));
    }
    parts.join("; ")
}

/// Checks one instance with the closed-form evaluator.
pub fn verify(id: IdentityId, params: &Params) -> Result<IdentityReport, IdentityError> {
    verify_with(id, params, Form::Verified, &ClosedForm)
}

/// Checks one instance under `form` with an arbitrary evaluator.
pub fn verify_with(
    id: IdentityId,
    params: &Params,
    form: Form,
    ev: &dyn Evaluator,
) -> Result<IdentityReport, IdentityError> {
    let v = ordered_args(id, params)?;
    let form = effective_form(id, form);
    domain(id, form, &v).map_err(|constraint| IdentityError::Domain { id, constraint })?;
    let primary = FormCheck::new(id, form, evaluate(id, form, ev, &v)?);
    let alternate = match other_form(id, form) {
        Some(alt) if domain(id, alt, &v).is_ok() => {
            Some(FormCheck::new(id, alt, evaluate(id, alt, ev, &v)?))
        }
        _ => None,
    };
    let note = describe(id, &v, &primary, alternate.as_ref());
    Ok(IdentityReport {
        id,
        status: id.status(),
        params: to_params(id, &v),
        form,
        lhs: primary.lhs,
        rhs: primary.rhs,
        holds: primary.holds,
        alternate,
        note,
    })
}

/// Read access to one grid point's parameters, by name.
pub struct ParamView<'a> {
    names: &'static [&'static str],
    values: &'a [i64],
}

impl ParamView<'_> {
    pub fn get(&self, name: &str) -> Option<i64> {
        self.names
            .iter()
            .position(|n| *n == name)
            .map(|i| self.values[i])
    }
}

impl std::ops::Index<&str> for ParamView<'_> {
    type Output = i64;

    fn index(&self, name: &str) -> &i64 {
        let i = self
            .names
            .iter()
            .position(|n| *n == name)
            .unwrap_or_else(|| panic!("no parameter `{name}`"));
        &self.values[i]
    }
}

type GridFilter<'a> = Box<dyn Fn(&ParamView<'_>) -> bool + Sync + 'a>;

/// Exhaustive check of one identity over a Cartesian parameter grid.
///
/// Grid points outside the identity's validity domain (and outside the
/// optional extra filter) are skipped before evaluation. Evaluation runs in
/// parallel; failures are reported sorted by parameter tuple.
pub struct Sweep<'a> {
    id: IdentityId,
    ranges: BTreeMap<String, (i64, i64)>,
    form: Form,
    filter: Option<GridFilter<'a>>,
    evaluator: &'a dyn Evaluator,
}

impl<'a> Sweep<'a> {
    pub fn new(id: IdentityId) -> Self {
        Self {
            id,
            ranges: BTreeMap::new(),
            form: Form::Verified,
            filter: None,
            evaluator: &ClosedForm,
        }
    }

    /// Inclusive range for one parameter.
    pub fn range(mut self, name: &str, lo: i64, hi: i64) -> Self {
        self.ranges.insert(name.to_string(), (lo, hi));
        self
    }

    pub fn ranges(mut self, ranges: &BTreeMap<String, (i64, i64)>) -> Self {
        self.ranges
            .extend(ranges.iter().map(|(k, v)| (k.clone(), *v)));
        self
    }

    pub fn form(mut self, form: Form) -> Self {
        self.form = form;
        self
    }

    pub fn filter(mut self, keep: impl Fn(&ParamView<'_>) -> bool + Sync + 'a) -> Self {
        self.filter = Some(Box::new(keep));
        self
    }

    pub fn evaluator(mut self, ev: &'a dyn Evaluator) -> Self {
        self.evaluator = ev;
        self
    }

    pub fn run(&self) -> Result<SweepReport, IdentityError> {
        let id = self.id;
        let names = id.params();
        if let Some(extra) = self.ranges.keys().find(|k| !names.contains(&k.as_str())) {
            return Err(IdentityError::UnexpectedParam {
                id,
                name: extra.clone(),
            });
        }
        let bounds: Vec<(i64, i64)> = names
            .iter()
            .map(|name| {
                self.ranges
                    .get(*name)
                    .copied()
                    .ok_or_else(|| IdentityError::MissingParam {
                        id,
                        name: name.to_string(),
                    })
            })
            .collect::<Result<_, _>>()?;
        let sizes: Vec<u64> = bounds
            .iter()
            .map(|&(lo, hi)| if hi < lo { 0 } else { (hi - lo + 1) as u64 })
            .collect();
        let total: u64 = sizes.iter().product();

        let form = effective_form(id, self.form);
        let alt_form = other_form(id, form);
        let start = Instant::now();
        let ev = self.evaluator;

        let outcomes: Vec<(Vec<i64>, bool, Option<bool>)> = (0..total)
            .into_par_iter()
            .filter_map(|mut index| {
                // Last parameter varies fastest, so the natural order is lexicographic.
                let mut v = vec![0i64; sizes.len()];
                for pos in (0..sizes.len()).rev() {
                    v[pos] = bounds[pos].0 + (index % sizes[pos]) as i64;
                    index /= sizes[pos];
                }
                domain(id, form, &v).ok()?;
                if let Some(keep) = &self.filter {
                    if !keep(&ParamView { names, values: &v }) {
                        return None;
                    }
                }
                let holds = evaluate(id, form, ev, &v)
                    .map(|c| chain_holds(&c))
                    .unwrap_or(false);
                let alt = alt_form
                    .filter(|alt| domain(id, *alt, &v).is_ok())
                    .map(|alt| {
                        evaluate(id, alt, ev, &v)
                            .map(|c| chain_holds(&c))
                            .unwrap_or(false)
                    });
                Some((v, holds, alt))
            })
            .collect();

        let mut failures: Vec<&Vec<i64>> = outcomes
            .iter()
            .filter(|(_, holds, _)| !holds)
            .map(|(v, _, _)| v)
            .collect();
        failures.sort();
        let alternate = alt_form.map(|alt| {
            let mut witnesses: Vec<&Vec<i64>> = outcomes
                .iter()
                .filter(|(_, _, a)| *a == Some(false))
                .map(|(v, _, _)| v)
                .collect();
            witnesses.sort();
            AlternateSummary {
                form: alt,
                checked: outcomes.iter().filter(|(_, _, a)| a.is_some()).count(),
                failure_count: witnesses.len(),
                witnesses: witnesses
                    .into_iter()
                    .take(MAX_WITNESSES)
                    .map(|v| to_params(id, v))
                    .collect(),
            }
        });

        Ok(SweepReport {
            id,
            status: id.status(),
            form,
            grid: names
                .iter()
                .zip(&bounds)
                .map(|(n, (lo, hi))| (n.to_string(), format!("{lo}..{hi}")))
                .collect(),
            instances: outcomes.len(),
            failure_count: failures.len(),
            failures: failures
                .into_iter()
                .take(MAX_WITNESSES)
                .map(|v| to_params(id, v))
                .collect(),
            alternate,
            elapsed_us: start.elapsed().as_micros() as u64,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(pairs: &[(&str, i64)]) -> Params {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn catalog_is_complete() {
        assert_eq!(IdentityId::ALL.len(), 23);
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), *id);
            assert!(id.labels(Form::Verified).len() >= 2);
            assert_eq!(id.paper_form().is_some(), id.status() == Status::Corrected);
        }
        assert!(matches!(
            "NOPE".parse::<IdentityId>(),
            Err(IdentityError::Unknown(_))
        ));
        assert_eq!(
            "triangle-config".parse::<IdentityId>().unwrap(),
            IdentityId::TriangleConfig
        );
    }

    #[test]
    fn cassini_instance() {
        let rep = verify(IdentityId::Cassini, &params(&[("k", 3)])).unwrap();
        assert_eq!(rep.lhs.value, int(1));
        assert_eq!(rep.rhs[0].value, int(1));
        assert!(rep.holds);
    }

    #[test]
    fn catalan_degenerate() {
        // j = k: both sides reduce to H(2k, k).
        let rep = verify(IdentityId::Catalan, &params(&[("k", 5), ("j", 5)])).unwrap();
        assert_eq!(rep.lhs.value, int(25));
        assert_eq!(rep.rhs[0].value, int(25));
        let rep = verify(IdentityId::Catalan, &params(&[("k", 5), ("j", 0)])).unwrap();
        assert_eq!(rep.lhs.value, int(0));
        assert!(rep.holds);
    }

    #[test]
    fn rectangle_shift_records_paper_sign() {
        let rep = verify(
            IdentityId::RectangleShift,
            &params(&[("k", 6), ("j", 1), ("i", 1), ("r", 1)]),
        )
        .unwrap();
        assert_eq!(rep.lhs.value, int(2));
        assert_eq!(rep.rhs[0].value, int(2));
        assert!(rep.holds);
        let alt = rep.alternate.unwrap();
        assert_eq!(alt.form, Form::Paper);
        assert_eq!(alt.rhs[0].value, int(-2));
        assert!(!alt.holds);
        assert!(rep.note.contains("paper-stated form"));
    }

    #[test]
    fn johnson_chain() {
        let rep = verify(
            IdentityId::Johnson,
            &params(&[("k", 5), ("j", 3), ("r", 6), ("i", 2), ("l", 1)]),
        )
        .unwrap();
        let values: Vec<_> = std::iter::once(&rep.lhs)
            .chain(&rep.rhs)
            .map(|t| t.value.clone())
            .collect();
        assert_eq!(values, vec![int(2), int(2), int(2)]);
    }

    #[test]
    fn rung_sum_instance() {
        let rep = verify(IdentityId::RungSum, &params(&[("k", 5), ("j", 2)])).unwrap();
        assert_eq!(rep.lhs.value, int(8));
        assert_eq!(rep.rhs[0].value, int(8));
    }

    #[test]
    fn odd_run_length_parity() {
        let odd = params(&[("k", 4), ("j", 0), ("n", 1), ("i", 1)]);
        assert!(matches!(
            verify(IdentityId::OddRunLength, &odd),
            Err(IdentityError::Domain { .. })
        ));
        let rep = verify_with(IdentityId::OddRunLength, &odd, Form::Paper, &ClosedForm).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.lhs.value, int(5));
        assert_eq!(rep.rhs[0].value, int(1));
        assert!(rep.note.contains("fails"));
        let even = params(&[("k", 4), ("j", 0), ("n", 1), ("i", 2)]);
        assert!(verify(IdentityId::OddRunLength, &even).unwrap().holds);
    }

    #[test]
    fn triangle_config_witness() {
        let rep = verify(IdentityId::TriangleConfig, &params(&[("n", 4), ("r", 2)])).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.lhs.value, int(0));
        let alt = rep.alternate.unwrap();
        assert!(!alt.holds);
        assert_eq!(alt.rhs[0].value, int(1));
    }

    #[test]
    fn zigzag_parallel_parity_split() {
        let odd = verify(
            IdentityId::ZigzagParallel,
            &params(&[("a", 5), ("b", 7), ("j", 3)]),
        );
        assert!(odd.unwrap().holds);
        let even = verify(
            IdentityId::ZigzagParallel,
            &params(&[("a", 2), ("b", 3), ("j", 2)]),
        )
        .unwrap();
        assert!(!even.holds);
        assert_eq!(even.lhs.value, int(-4));
        assert_eq!(even.rhs[0].value, int(-6));
    }

    #[test]
    fn hockey_stick_note_names_case() {
        let rep = verify(
            IdentityId::HockeyStick,
            &params(&[("k", 2), ("n", 3), ("side", 1)]),
        )
        .unwrap();
        assert!(rep.holds);
        assert_eq!(rep.rhs.len(), 2);
        assert!(rep.note.contains("case 5"));
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(
            verify(IdentityId::RungSum, &params(&[("k", 5)])),
            Err(IdentityError::MissingParam { .. })
        ));
        assert!(matches!(
            verify(
                IdentityId::RungSum,
                &params(&[("k", 5), ("j", 1), ("q", 1)])
            ),
            Err(IdentityError::UnexpectedParam { .. })
        ));
        let err = verify(IdentityId::RungSum, &params(&[("k", 5), ("j", 9)])).unwrap_err();
        assert_eq!(
            err.to_string(),
            "RUNG_SUM: parameters violate `0 <= j <= k`"
        );
    }

    #[test]
    fn deterministic_reports() {
        let p = params(&[("m", 9), ("l", 4)]);
        assert_eq!(
            verify(IdentityId::BraidClosed, &p).unwrap(),
            verify(IdentityId::BraidClosed, &p).unwrap()
        );
    }

    #[test]
    fn sweep_counts_and_order() {
        let rep = Sweep::new(IdentityId::Cassini)
            .range("k", 1, 200)
            .run()
            .unwrap();
        assert_eq!(rep.instances, 200);
        assert!(rep.passed());

        let rep = Sweep::new(IdentityId::TriangleConfig)
            .range("n", 2, 30)
            .range("r", 1, 30)
            .form(Form::Paper)
            .run()
            .unwrap();
        assert!(rep.failure_count > 0);
        assert!(rep.failures.contains(&params(&[("n", 4), ("r", 2)])));
        let mut sorted = rep.failures.clone();
        sorted.sort_by_key(|p| (p["n"], p["r"]));
        assert_eq!(sorted, rep.failures);
    }

    #[test]
    fn empty_grid_is_not_an_error() {
        let rep = Sweep::new(IdentityId::Cassini)
            .range("k", 5, 1)
            .run()
            .unwrap();
        assert_eq!(rep.instances, 0);
        let rep = Sweep::new(IdentityId::Cassini)
            .range("k", -5, 0)
            .run()
            .unwrap();
        assert_eq!(rep.instances, 0);
        assert!(Sweep::new(IdentityId::RungSum)
            .range("k", 1, 3)
            .run()
            .is_err());
    }
}
