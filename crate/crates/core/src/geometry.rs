//! Point configurations drawn on the triangle.
//!
//! Coordinates use the centred layout: entry `(r, k)` sits at height `r` and
//! horizontal position `k - r/2`. Under that convention "two rows down, one
//! position right" is straight down, a slash diagonal keeps `k` fixed and a
//! backslash diagonal raises `k` with `r`.
//!
//! Every constructor refuses to produce a point outside `0 <= k <= r`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fib::ExactInteger;
use crate::report::decimal;
use crate::triangle::{entry, GridPoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("{config}: point ({r}, {k}) falls outside the triangle")]
    OutOfTriangle { config: ConfigKind, r: i64, k: i64 },
    #[error("{config}: {reason}")]
    InvalidParameter { config: ConfigKind, reason: String },
    #[error("cannot parse configuration `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConfigKind {
    VerticalRun,
    HorizontalRung,
    ObliqueLadder,
    LongZigzag,
    #[serde(rename = "ZIGZAG_6K5")]
    Zigzag6k5,
    HockeyStick,
    BraidTerms,
    Rhombus,
    TriangleConfig,
    Diagonal,
}

impl ConfigKind {
    pub const ALL: [ConfigKind; 10] = [
        ConfigKind::VerticalRun,
        ConfigKind::HorizontalRung,
        ConfigKind::ObliqueLadder,
        ConfigKind::LongZigzag,
        ConfigKind::Zigzag6k5,
        ConfigKind::HockeyStick,
        ConfigKind::BraidTerms,
        ConfigKind::Rhombus,
        ConfigKind::TriangleConfig,
        ConfigKind::Diagonal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConfigKind::VerticalRun => "vertical_run",
            ConfigKind::HorizontalRung => "horizontal_rung",
            ConfigKind::ObliqueLadder => "oblique_ladder",
            ConfigKind::LongZigzag => "long_zigzag",
            ConfigKind::Zigzag6k5 => "zigzag_6k5",
            ConfigKind::HockeyStick => "hockey_stick",
            ConfigKind::BraidTerms => "braid_terms",
            ConfigKind::Rhombus => "rhombus",
            ConfigKind::TriangleConfig => "triangle_config",
            ConfigKind::Diagonal => "diagonal",
        }
    }
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Direction of one three-point run of a long zigzag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Run {
    /// `k` fixed while `r` grows.
    Slash,
    /// `k` grows with `r`.
    Backslash,
}

impl Run {
    pub fn flip(self) -> Self {
        match self {
            Run::Slash => Run::Backslash,
            Run::Backslash => Run::Slash,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// One point of a configuration with its value and optional label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledPoint {
    pub point: GridPoint,
    #[serde(with = "decimal")]
    pub value: ExactInteger,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub role: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSet {
    pub kind: ConfigKind,
    pub points: Vec<LabeledPoint>,
}

impl PointSet {
    fn build<I, S>(kind: ConfigKind, coords: I) -> Result<Self, GeometryError>
    where
        I: IntoIterator<Item = (i64, i64, Option<S>)>,
        S: Into<String>,
    {
        let points = coords
            .into_iter()
            .map(|(r, k, role)| {
                let point = GridPoint::new(r, k).map_err(|_| GeometryError::OutOfTriangle {
                    config: kind,
                    r,
                    k,
                })?;
                Ok(LabeledPoint {
                    point,
                    value: entry(point),
                    role: role.map(Into::into),
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { kind, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn coords(&self) -> impl Iterator<Item = GridPoint> + '_ {
        self.points.iter().map(|p| p.point)
    }

    pub fn values(&self) -> Vec<ExactInteger> {
        self.points.iter().map(|p| p.value.clone()).collect()
    }

    pub fn with_role<'a>(&'a self, role: &'a str) -> impl Iterator<Item = &'a LabeledPoint> + 'a {
        self.points
            .iter()
            .filter(move |p| p.role.as_deref() == Some(role))
    }

    /// First point carrying `role`.
    pub fn get(&self, role: &str) -> Option<&LabeledPoint> {
        self.points.iter().find(|p| p.role.as_deref() == Some(role))
    }

    pub fn sum_where(&self, mut keep: impl FnMut(&str) -> bool) -> ExactInteger {
        self.points
            .iter()
            .filter(|p| p.role.as_deref().is_some_and(&mut keep))
            .map(|p| &p.value)
            .sum()
    }
}

/// A transversal line of a ladder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rung {
    pub points: Vec<LabeledPoint>,
    /// value(last) - value(first)
    #[serde(with = "decimal")]
    pub length: ExactInteger,
    #[serde(with = "decimal")]
    pub absolute_length: ExactInteger,
}

impl Rung {
    fn new(points: Vec<LabeledPoint>) -> Self {
        let length = match (points.first(), points.last()) {
            (Some(a), Some(b)) => &b.value - &a.value,
            _ => BigInt::default(),
        };
        let absolute_length = length.abs();
        Self {
            points,
            length,
            absolute_length,
        }
    }

    pub fn sum(&self) -> ExactInteger {
        self.points.iter().map(|p| &p.value).sum()
    }
}

fn invalid(config: ConfigKind, reason: impl Into<String>) -> GeometryError {
    GeometryError::InvalidParameter {
        config,
        reason: reason.into(),
    }
}

/// `H(r + 2t, k + t)` for `t = 0..count`: the points straight below `start`.
pub fn vertical_run(start: GridPoint, count: usize) -> Result<PointSet, GeometryError> {
    let (r, k) = (start.r(), start.k());
    PointSet::build(
        ConfigKind::VerticalRun,
        (0..count as i64).map(|t| (r + 2 * t, k + t, None::<String>)),
    )
}

/// `width` consecutive points of one row starting at `start`.
pub fn horizontal_rung(start: GridPoint, width: usize) -> Result<PointSet, GeometryError> {
    let (r, k) = (start.r(), start.k());
    PointSet::build(
        ConfigKind::HorizontalRung,
        (0..width as i64).map(|t| (r, k + t, None::<String>)),
    )
}

/// The backslash ladder with horizontal two-point rungs hanging off the
/// `d`-th diagonal. Rung `t` (1-based) is `{H(t+d+1, t), H(t+d+1, t+1)}`,
/// whose values are `F(t) F(d+1)` and `F(t+1) F(d)`.
pub fn oblique_ladder(d: i64, rungs: usize) -> Result<Vec<Rung>, GeometryError> {
    const KIND: ConfigKind = ConfigKind::ObliqueLadder;
    if d < 1 {
        return Err(invalid(
            KIND,
            format!("diagonal index must be >= 1, got {d}"),
        ));
    }
    if rungs < 1 {
        return Err(invalid(KIND, "at least one rung is required"));
    }
    (1..=rungs as i64)
        .map(|t| {
            let row = t + d + 1;
            let set = PointSet::build(
                KIND,
                [
                    (row, t, Some(format!("rung{t}.a"))),
                    (row, t + 1, Some(format!("rung{t}.b"))),
                ],
            )?;
            Ok(Rung::new(set.points))
        })
        .collect()
}

/// Flattened [`oblique_ladder`] for rendering.
pub fn oblique_ladder_points(d: i64, rungs: usize) -> Result<PointSet, GeometryError> {
    Ok(PointSet {
        kind: ConfigKind::ObliqueLadder,
        points: oblique_ladder(d, rungs)?
            .into_iter()
            .flat_map(|rung| rung.points)
            .collect(),
    })
}

/// Long zigzag `p_1..p_n` from `start`.
///
/// Consecutive triples `(p_{2t+1}, p_{2t+2}, p_{2t+3})` each lie on one
/// diagonal run, and the run direction alternates starting with `first`.
/// Each step moves one row down; a slash step keeps `k`, a backslash step
/// adds one to it. Points are labelled `p1`, `p2`, ...
pub fn long_zigzag(start: GridPoint, n: usize, first: Run) -> Result<PointSet, GeometryError> {
    let mut coords = Vec::with_capacity(n);
    let (mut r, mut k) = (start.r(), start.k());
    for i in 1..=n {
        if i > 1 {
            let triple = (i - 2) / 2;
            let run = if triple % 2 == 0 { first } else { first.flip() };
            r += 1;
            if run == Run::Backslash {
                k += 1;
            }
        }
        coords.push((r, k, Some(format!("p{i}"))));
    }
    PointSet::build(ConfigKind::LongZigzag, coords)
}

/// The `6k + 5` zigzag hanging from `apex = (r, c)`.
///
/// Head: `p1 = H(r-2, c-2)`, `p2 = H(r-1, c-1)`, `p3 = H(r-2, c)`,
/// `p4 = H(r-1, c)`, `p5 = H(r, c)`. Then three vertical columns of `2k`
/// points starting at `H(r+1, c)` (role `left`), `H(r+2, c+1)` (`middle`)
/// and `H(r+1, c+1)` (`right`).
///
/// The left zigzag is `{p1, p2, p5} + left + middle`, the right zigzag is
/// `{p3, p4, p5} + right + middle`.
pub fn zigzag_6k5(apex: GridPoint, blocks: usize) -> Result<PointSet, GeometryError> {
    const KIND: ConfigKind = ConfigKind::Zigzag6k5;
    if blocks < 1 {
        return Err(invalid(KIND, "block count must be >= 1"));
    }
    let (r, c) = (apex.r(), apex.k());
    let mut coords: Vec<(i64, i64, Option<String>)> = vec![
        (r - 2, c - 2, Some("p1".into())),
        (r - 1, c - 1, Some("p2".into())),
        (r - 2, c, Some("p3".into())),
        (r - 1, c, Some("p4".into())),
        (r, c, Some("p5".into())),
    ];
    let column_len = 2 * blocks as i64;
    for (role, r0, c0) in [
        ("left", r + 1, c),
        ("middle", r + 2, c + 1),
        ("right", r + 1, c + 1),
    ] {
        coords.extend((0..column_len).map(|t| (r0 + 2 * t, c0 + t, Some(role.to_string()))));
    }
    PointSet::build(KIND, coords)
}

pub const LEFT_ZIGZAG: [&str; 5] = ["p1", "p2", "p5", "left", "middle"];
pub const RIGHT_ZIGZAG: [&str; 5] = ["p3", "p4", "p5", "right", "middle"];

/// Which of the five hockey-stick cases a shaft falls under:
/// 1 left/even, 2 right/even, 3 left/odd, 4 right/odd, 5 central shaft.
pub fn hockey_case(base_row: i64, count: usize, side: Side) -> u8 {
    match (base_row == 2, count.is_multiple_of(2), side) {
        (true, _, _) => 5,
        (false, true, Side::Left) => 1,
        (false, true, Side::Right) => 2,
        (false, false, Side::Left) => 3,
        (false, false, Side::Right) => 4,
    }
}

/// Hockey stick whose shaft starts on the first nonzero diagonal.
///
/// Left side: shaft `s_i = H(k + 2i - 2, i)` for `i = 1..=n`. The blade is
/// `b_L = H(k + 4m - 1, 2m)` when `n = 2m` and `b_R = H(k + 4m + 1, 2m + 2)`
/// when `n = 2m + 1`. The right side mirrors every point, which also swaps
/// the blade's side. For `k = 2` the shaft runs down the centre and both
/// blade candidates are emitted; they are mirror images with equal value.
///
/// Roles: `s1..sn`, and `b_L` / `b_R` for the blade.
pub fn hockey_stick(base_row: i64, count: usize, side: Side) -> Result<PointSet, GeometryError> {
    const KIND: ConfigKind = ConfigKind::HockeyStick;
    if base_row < 2 {
        return Err(invalid(
            KIND,
            format!("base row must be >= 2, got {base_row}"),
        ));
    }
    if count < 1 {
        return Err(invalid(KIND, "shaft needs at least one point"));
    }
    let k = base_row;
    let n = count as i64;
    let mut left: Vec<(i64, i64, String)> = (1..=n)
        .map(|i| (k + 2 * i - 2, i, format!("s{i}")))
        .collect();
    let m = n / 2;
    let (blade, label) = if n % 2 == 0 {
        ((k + 4 * m - 1, 2 * m), "b_L")
    } else {
        ((k + 4 * m + 1, 2 * m + 2), "b_R")
    };
    left.push((blade.0, blade.1, label.to_string()));

    let mirror = |(r, c, role): (i64, i64, String)| {
        let role = match role.as_str() {
            "b_L" => "b_R".to_string(),
            "b_R" => "b_L".to_string(),
            _ => role,
        };
        (r, r - c, role)
    };

    let mut coords: Vec<(i64, i64, String)> = match side {
        Side::Left => left.clone(),
        Side::Right => left.iter().cloned().map(mirror).collect(),
    };
    if base_row == 2 {
        let other = coords.last().cloned().map(mirror).expect("blade present");
        coords.push(other);
    }
    PointSet::build(
        KIND,
        coords.into_iter().map(|(r, c, role)| (r, c, Some(role))),
    )
}

/// The point terms of the signed braid summation at `(n, m)` with depth `l`.
///
/// Roles carry side and sign: `L+` / `L-` for `H(n-k, m-k)` and
/// `(-1)^k H(n+k, m+k)`, `R+` / `R-` for `H(n-k, m)` and `(-1)^k H(n+k, m)`.
pub fn braid_terms(n: i64, m: i64, l: i64) -> Result<PointSet, GeometryError> {
    const KIND: ConfigKind = ConfigKind::BraidTerms;
    if l < 0 {
        return Err(invalid(KIND, "depth must be >= 0"));
    }
    let sign = |k: i64| if k % 2 == 0 { "+" } else { "-" };
    let mut coords = Vec::new();
    for k in 0..=l {
        coords.push((n - k, m - k, Some("L+".to_string())));
    }
    for k in 1..=l {
        coords.push((n + k, m + k, Some(format!("L{}", sign(k)))));
    }
    for k in 0..=l {
        coords.push((n - k, m, Some("R+".to_string())));
    }
    for k in 1..=l {
        coords.push((n + k, m, Some(format!("R{}", sign(k)))));
    }
    PointSet::build(KIND, coords)
}

/// The 2x2 window `H(n,r), H(n,r+1), H(n+1,r), H(n+1,r+1)`, roles
/// `top_left`, `top_right`, `bottom_left`, `bottom_right`.
pub fn rhombus(n: i64, r: i64) -> Result<PointSet, GeometryError> {
    PointSet::build(
        ConfigKind::Rhombus,
        [
            (n, r, Some("top_left")),
            (n, r + 1, Some("top_right")),
            (n + 1, r, Some("bottom_left")),
            (n + 1, r + 1, Some("bottom_right")),
        ],
    )
}

/// `a = H(n+1, r-1)`, `b = H(n, r)`, `c = H(n+2, r+1)` for the left
/// orientation; the right orientation is the mirror image.
pub fn triangle_config(n: i64, r: i64, orientation: Side) -> Result<PointSet, GeometryError> {
    const KIND: ConfigKind = ConfigKind::TriangleConfig;
    if r < 1 || r > n {
        return Err(invalid(KIND, format!("need 1 <= r <= n, got n={n}, r={r}")));
    }
    let left = [(n + 1, r - 1, "a"), (n, r, "b"), (n + 2, r + 1, "c")];
    PointSet::build(
        KIND,
        left.into_iter().map(|(row, k, role)| match orientation {
            Side::Left => (row, k, Some(role)),
            Side::Right => (row, row - k, Some(role)),
        }),
    )
}

/// The generalized Fibonacci sequence of the `d`-th oblique ladder:
/// `F(d+1), F(d)`, then the rung sums, `count` terms in all.
pub fn ladder_sequence(d: i64, count: usize) -> Result<Vec<ExactInteger>, GeometryError> {
    const KIND: ConfigKind = ConfigKind::ObliqueLadder;
    if count < 2 {
        return Err(invalid(KIND, format!("need at least 2 terms, got {count}")));
    }
    let mut seq = Vec::with_capacity(count);
    seq.push(crate::fib::fib(d + 1));
    seq.push(crate::fib::fib(d));
    if count > 2 {
        seq.extend(oblique_ladder(d, count - 2)?.iter().map(Rung::sum));
    } else if d < 1 {
        return Err(invalid(
            KIND,
            format!("diagonal index must be >= 1, got {d}"),
        ));
    }
    Ok(seq)
}

/// `H(d + t, t)` for `t = 0..len`.
pub fn diagonal(d: i64, len: usize) -> Result<PointSet, GeometryError> {
    if d < 0 {
        return Err(invalid(ConfigKind::Diagonal, "diagonal index must be >= 0"));
    }
    PointSet::build(
        ConfigKind::Diagonal,
        (0..len as i64).map(|t| (d + t, t, None::<String>)),
    )
}

/// A configuration with all of its parameters, parsed from and printed as
/// `kind:key=value,...`, for example `hockey_stick:k=3,n=2,side=left`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigSpec {
    VerticalRun {
        start: GridPoint,
        count: usize,
    },
    HorizontalRung {
        start: GridPoint,
        width: usize,
    },
    ObliqueLadder {
        d: i64,
        rungs: usize,
    },
    LongZigzag {
        start: GridPoint,
        points: usize,
        first: Run,
    },
    Zigzag6k5 {
        apex: GridPoint,
        blocks: usize,
    },
    HockeyStick {
        base_row: i64,
        count: usize,
        side: Side,
    },
    BraidTerms {
        n: i64,
        m: i64,
        l: i64,
    },
    Rhombus {
        n: i64,
        r: i64,
    },
    TriangleConfig {
        n: i64,
        r: i64,
        orientation: Side,
    },
    Diagonal {
        d: i64,
        len: usize,
    },
}

impl ConfigSpec {
    pub fn kind(&self) -> ConfigKind {
        match self {
            ConfigSpec::VerticalRun { .. } => ConfigKind::VerticalRun,
            ConfigSpec::HorizontalRung { .. } => ConfigKind::HorizontalRung,
            ConfigSpec::ObliqueLadder { .. } => ConfigKind::ObliqueLadder,
            ConfigSpec::LongZigzag { .. } => ConfigKind::LongZigzag,
            ConfigSpec::Zigzag6k5 { .. } => ConfigKind::Zigzag6k5,
            ConfigSpec::HockeyStick { .. } => ConfigKind::HockeyStick,
            ConfigSpec::BraidTerms { .. } => ConfigKind::BraidTerms,
            ConfigSpec::Rhombus { .. } => ConfigKind::Rhombus,
            ConfigSpec::TriangleConfig { .. } => ConfigKind::TriangleConfig,
            ConfigSpec::Diagonal { .. } => ConfigKind::Diagonal,
        }
    }

    /// The anchoring lattice point, where the configuration has one.
    pub fn anchor(&self) -> Option<GridPoint> {
        match *self {
            ConfigSpec::VerticalRun { start, .. }
            | ConfigSpec::HorizontalRung { start, .. }
            | ConfigSpec::LongZigzag { start, .. } => Some(start),
            ConfigSpec::Zigzag6k5 { apex, .. } => Some(apex),
            ConfigSpec::HockeyStick { base_row, .. } => GridPoint::new(base_row, 1).ok(),
            ConfigSpec::BraidTerms { n, m, .. } => GridPoint::new(n, m).ok(),
            ConfigSpec::Rhombus { n, r } | ConfigSpec::TriangleConfig { n, r, .. } => {
                GridPoint::new(n, r).ok()
            }
            ConfigSpec::ObliqueLadder { d, .. } => GridPoint::new(d + 2, 1).ok(),
            ConfigSpec::Diagonal { d, .. } => GridPoint::new(d, 0).ok(),
        }
    }

    pub fn materialize(&self) -> Result<PointSet, GeometryError> {
        match *self {
            ConfigSpec::VerticalRun { start, count } => vertical_run(start, count),
            ConfigSpec::HorizontalRung { start, width } => horizontal_rung(start, width),
            ConfigSpec::ObliqueLadder { d, rungs } => oblique_ladder_points(d, rungs),
            ConfigSpec::LongZigzag {
                start,
                points,
                first,
            } => long_zigzag(start, points, first),
            ConfigSpec::Zigzag6k5 { apex, blocks } => zigzag_6k5(apex, blocks),
            ConfigSpec::HockeyStick {
                base_row,
                count,
                side,
            } => hockey_stick(base_row, count, side),
            ConfigSpec::BraidTerms { n, m, l } => braid_terms(n, m, l),
            ConfigSpec::Rhombus { n, r } => rhombus(n, r),
            ConfigSpec::TriangleConfig { n, r, orientation } => triangle_config(n, r, orientation),
            ConfigSpec::Diagonal { d, len } => diagonal(d, len),
        }
    }
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::Right => "right",
    }
}

impl fmt::Display for ConfigSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.kind())?;
        match *self {
            ConfigSpec::VerticalRun { start, count } => {
                write!(f, "r={},k={},count={count}", start.r(), start.k())
            }
            ConfigSpec::HorizontalRung { start, width } => {
                write!(f, "r={},k={},width={width}", start.r(), start.k())
            }
            ConfigSpec::ObliqueLadder { d, rungs } => write!(f, "d={d},rungs={rungs}"),
            ConfigSpec::LongZigzag {
                start,
                points,
                first,
            } => {
                let first = match first {
                    Run::Slash => "slash",
                    Run::Backslash => "backslash",
                };
                write!(
                    f,
                    "r={},k={},n={points},first={first}",
                    start.r(),
                    start.k()
                )
            }
            ConfigSpec::Zigzag6k5 { apex, blocks } => {
                write!(f, "r={},c={},blocks={blocks}", apex.r(), apex.k())
            }
            ConfigSpec::HockeyStick {
                base_row,
                count,
                side,
            } => write!(f, "k={base_row},n={count},side={}", side_name(side)),
            ConfigSpec::BraidTerms { n, m, l } => write!(f, "n={n},m={m},l={l}"),
            ConfigSpec::Rhombus { n, r } => write!(f, "n={n},r={r}"),
            ConfigSpec::TriangleConfig { n, r, orientation } => {
                write!(f, "n={n},r={r},orientation={}", side_name(orientation))
            }
            ConfigSpec::Diagonal { d, len } => write!(f, "d={d},len={len}"),
        }
    }
}

struct Fields<'a> {
    input: &'a str,
    map: BTreeMap<String, String>,
}

impl Fields<'_> {
    fn err(&self, reason: impl Into<String>) -> GeometryError {
        GeometryError::Parse {
            input: self.input.to_string(),
            reason: reason.into(),
        }
    }

    fn raw(&mut self, key: &str) -> Result<String, GeometryError> {
        self.map
            .remove(key)
            .ok_or_else(|| self.err(format!("missing `{key}`")))
    }

    fn int(&mut self, key: &str) -> Result<i64, GeometryError> {
        let raw = self.raw(key)?;
        raw.parse()
            .map_err(|_| self.err(format!("`{key}` must be an integer, got `{raw}`")))
    }

    fn count(&mut self, key: &str) -> Result<usize, GeometryError> {
        let raw = self.raw(key)?;
        raw.parse().map_err(|_| {
            self.err(format!(
                "`{key}` must be a nonnegative integer, got `{raw}`"
            ))
        })
    }

    fn point(&mut self, r: &str, k: &str) -> Result<GridPoint, GeometryError> {
        let (rv, kv) = (self.int(r)?, self.int(k)?);
        GridPoint::new(rv, kv).map_err(|e| self.err(e.to_string()))
    }

    fn side(&mut self, key: &str) -> Result<Side, GeometryError> {
        match self.raw(key)?.to_ascii_lowercase().as_str() {
            "left" | "l" => Ok(Side::Left),
            "right" | "r" => Ok(Side::Right),
            other => Err(self.err(format!("`{key}` must be left or right, got `{other}`"))),
        }
    }

    fn finish(self) -> Result<(), GeometryError> {
        match self.map.keys().next() {
            Some(extra) => Err(self.err(format!("unexpected key `{extra}`"))),
            None => Ok(()),
        }
    }
}

impl FromStr for ConfigSpec {
    type Err = GeometryError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let (kind, rest) = input.split_once(':').unwrap_or((input, ""));
        let kind_norm = kind.trim().to_ascii_lowercase().replace('-', "_");
        let mut fields = Fields {
            input,
            map: BTreeMap::new(),
        };
        for pair in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| fields.err(format!("expected key=value, got `{pair}`")))?;
            fields
                .map
                .insert(key.trim().to_ascii_lowercase(), value.trim().to_string());
        }
        let kind = ConfigKind::ALL
            .into_iter()
            .find(|k| k.name() == kind_norm)
            .ok_or_else(|| fields.err(format!("unknown configuration kind `{kind}`")))?;

        let spec = match kind {
            ConfigKind::VerticalRun => ConfigSpec::VerticalRun {
                start: fields.point("r", "k")?,
                count: fields.count("count")?,
            },
            ConfigKind::HorizontalRung => ConfigSpec::HorizontalRung {
                start: fields.point("r", "k")?,
                width: fields.count("width")?,
            },
            ConfigKind::ObliqueLadder => ConfigSpec::ObliqueLadder {
                d: fields.int("d")?,
                rungs: fields.count("rungs")?,
            },
            ConfigKind::LongZigzag => {
                let start = fields.point("r", "k")?;
                let points = fields.count("n")?;
                let first = match fields.raw("first")?.to_ascii_lowercase().as_str() {
                    "slash" | "/" => Run::Slash,
                    "backslash" | "\\" => Run::Backslash,
                    other => {
                        return Err(fields
                            .err(format!("`first` must be slash or backslash, got `{other}`")))
                    }
                };
                ConfigSpec::LongZigzag {
                    start,
                    points,
                    first,
                }
            }
            ConfigKind::Zigzag6k5 => ConfigSpec::Zigzag6k5 {
                apex: fields.point("r", "c")?,
                blocks: fields.count("blocks")?,
            },
            ConfigKind::HockeyStick => ConfigSpec::HockeyStick {
                base_row: fields.int("k")?,
                count: fields.count("n")?,
                side: fields.side("side")?,
            },
            ConfigKind::BraidTerms => ConfigSpec::BraidTerms {
                n: fields.int("n")?,
                m: fields.int("m")?,
                l: fields.int("l")?,
            },
            ConfigKind::Rhombus => ConfigSpec::Rhombus {
                n: fields.int("n")?,
                r: fields.int("r")?,
            },
            ConfigKind::TriangleConfig => ConfigSpec::TriangleConfig {
                n: fields.int("n")?,
                r: fields.int("r")?,
                orientation: fields.side("orientation")?,
            },
            ConfigKind::Diagonal => ConfigSpec::Diagonal {
                d: fields.int("d")?,
                len: fields.count("len")?,
            },
        };
        fields.finish()?;
        Ok(spec)
    }
}

impl Serialize for ConfigSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ConfigSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
