//! Point data sequences on a quiver, their equivalence, and the graded
//! point representations they define.
//!
//! Only eventually periodic sequences are representable: a finite preperiod
//! followed by a period repeated forever.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::branching::{type1, Family, Label, MatrixSpec};
use crate::error::{Error, Result};
use crate::partitions::{Partition, PartitionPair};
use crate::quiver::{quiver_of, Quiver};

/// A point of projective space, kept as an unnormalized nonzero vector.
#[derive(Clone, Debug)]
pub struct ProjectivePoint {
    coords: Vec<BigRational>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self> {
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::InvalidSequence(
                "projective point with all coordinates zero".into(),
            ));
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn from_integers(coords: &[i64]) -> Result<Self> {
        Self::new(
            coords
                .iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect(),
        )
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// The same point with every coordinate multiplied by `c ≠ 0`.
    pub fn scaled(&self, c: &BigRational) -> Self {
        assert!(!c.is_zero(), "projective scaling by zero");
        ProjectivePoint {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    /// Equality in projective space: `x_i y_j = x_j y_i` for all `i, j`.
    pub fn same_point(&self, other: &ProjectivePoint) -> bool {
        projectively_equal(&self.coords, &other.coords)
    }
}

fn projectively_equal(x: &[BigRational], y: &[BigRational]) -> bool {
    x.len() == y.len() && (0..x.len()).all(|i| (i + 1..x.len()).all(|j| &x[i] * &y[j] == &x[j] * &y[i]))
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(":"))
    }
}

impl FromStr for ProjectivePoint {
    type Err = Error;

    /// Accepts `(a:b:…)` with integer or `p/q` coordinates.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected '(a:b:...)', got {s:?}")))?;
        let coords = inner.split(':').map(parse_rational).collect::<Result<Vec<_>>>()?;
        ProjectivePoint::new(coords)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// One term `(λ_k, x_k)` of a point data sequence.
#[derive(Clone, Debug)]
pub struct PointDatum {
    pub vertex: Label,
    pub point: ProjectivePoint,
}

/// An eventually periodic point data sequence `(λ_k, x_k)_{k ≥ 0}` with
/// `x_k` a point of the projectivized space of arrows `λ_k → λ_{k+1}`.
#[derive(Clone, Debug)]
pub struct PointDataSequence {
    quiver: Quiver,
    preperiod: Vec<PointDatum>,
    period: Vec<PointDatum>,
}

impl PointDataSequence {
    pub fn new(quiver: Quiver, preperiod: Vec<PointDatum>, period: Vec<PointDatum>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidSequence("period must be nonempty".into()));
        }
        let s = PointDataSequence {
            quiver,
            preperiod,
            period,
        };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        let total = self.preperiod.len() + self.period.len();
        for k in 0..total {
            let here = self.term(k);
            let next = self.term(k + 1);
            let (from, to) = match (self.quiver.index_of(&here.vertex), self.quiver.index_of(&next.vertex)) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    return Err(Error::InvalidSequence(format!(
                        "vertex {} or {} is not in the quiver",
                        here.vertex, next.vertex
                    )))
                }
            };
            let arrows = self.quiver.arrow_count(from, to) as usize;
            if arrows == 0 {
                return Err(Error::InvalidSequence(format!(
                    "no arrow {} -> {} at index {k}",
                    here.vertex, next.vertex
                )));
            }
            if here.point.dim() != arrows {
                return Err(Error::InvalidSequence(format!(
                    "point at index {k} has {} coordinates, expected {arrows}",
                    here.point.dim()
                )));
            }
        }
        Ok(())
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn preperiod(&self) -> &[PointDatum] {
        &self.preperiod
    }

    pub fn period(&self) -> &[PointDatum] {
        &self.period
    }

    /// Term `k` of the infinite sequence.
    pub fn term(&self, k: usize) -> &PointDatum {
        match self.preperiod.get(k) {
            Some(t) => t,
            None => &self.period[(k - self.preperiod.len()) % self.period.len()],
        }
    }

    /// The sequence with its first `prefix.len()` terms replaced; all later
    /// terms keep their indices.
    pub fn with_prefix(&self, prefix: Vec<PointDatum>) -> Result<Self> {
        let mut s = self.clone();
        while s.preperiod.len() < prefix.len() {
            s = s.rotated();
        }
        let mut pre = prefix;
        pre.extend(s.preperiod[pre.len()..].iter().cloned());
        PointDataSequence::new(self.quiver.clone(), pre, s.period)
    }

    /// Re-encodes the same sequence with the first period term moved into
    /// the preperiod.
    pub fn rotated(&self) -> Self {
        let mut pre = self.preperiod.clone();
        pre.push(self.period[0].clone());
        let mut period = self.period.clone();
        period.rotate_left(1);
        PointDataSequence {
            quiver: self.quiver.clone(),
            preperiod: pre,
            period,
        }
    }

    /// Every point scaled by the corresponding nonzero factor (cycled).
    pub fn rescaled(&self, factors: &[BigRational]) -> Self {
        let mut i = 0;
        let mut scale = |d: &PointDatum| {
            let c = &factors[i % factors.len()];
            i += 1;
            PointDatum {
                vertex: d.vertex.clone(),
                point: d.point.scaled(c),
            }
        };
        let preperiod = self.preperiod.iter().map(&mut scale).collect();
        let period = self.period.iter().map(&mut scale).collect();
        PointDataSequence {
            quiver: self.quiver.clone(),
            preperiod,
            period,
        }
    }

    /// JSON form; the quiver must carry its matrix descriptor.
    pub fn to_json(&self) -> Result<Value> {
        let spec = self
            .quiver
            .descriptor
            .ok_or_else(|| Error::InvalidParameter("quiver has no matrix descriptor".into()))?;
        let terms = |ts: &[PointDatum]| -> Vec<Value> {
            ts.iter()
                .map(|t| {
                    json!({
                        "vertex": t.vertex.to_string(),
                        "coords": t.point.coords.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    })
                })
                .collect()
        };
        Ok(json!({
            "quiver_ref": {"family": spec.family().to_string(), "n": spec.n(), "params": spec.params()},
            "preperiod": terms(&self.preperiod),
            "period": terms(&self.period),
        }))
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("point sequence JSON: {what}"));
        let r = &value["quiver_ref"];
        let family: Family = r["family"]
            .as_str()
            .ok_or_else(|| bad("missing quiver_ref.family"))?
            .parse()?;
        let n = r["n"].as_u64().ok_or_else(|| bad("missing quiver_ref.n"))? as usize;
        let params = r["params"]
            .as_array()
            .ok_or_else(|| bad("missing quiver_ref.params"))?
            .iter()
            .map(|p| {
                p.as_u64()
                    .map(|x| x as usize)
                    .ok_or_else(|| bad("non-integer parameter"))
            })
            .collect::<Result<Vec<_>>>()?;
        let spec = MatrixSpec::new(family, n, &params)?;
        let quiver = quiver_of(&spec.build()?);
        let terms = |key: &str| -> Result<Vec<PointDatum>> {
            value[key]
                .as_array()
                .ok_or_else(|| bad(&format!("missing {key}")))?
                .iter()
                .map(|t| {
                    let vertex = t["vertex"].as_str().ok_or_else(|| bad("vertex is not a string"))?;
                    let vertex = if family == Family::C {
                        Label::Pair(vertex.parse::<PartitionPair>()?)
                    } else {
                        Label::Single(vertex.parse::<Partition>()?)
                    };
                    let coords = t["coords"]
                        .as_array()
                        .ok_or_else(|| bad("coords is not an array"))?
                        .iter()
                        .map(|c| match c {
                            Value::String(s) => parse_rational(s),
                            Value::Number(x) => x
                                .as_i64()
                                .map(|i| BigRational::from_integer(BigInt::from(i)))
                                .ok_or_else(|| bad("non-integer number coordinate")),
                            _ => Err(bad("coordinate must be a string or integer")),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(PointDatum {
                        vertex,
                        point: ProjectivePoint::new(coords)?,
                    })
                })
                .collect()
        };
        PointDataSequence::new(quiver, terms("preperiod")?, terms("period")?)
    }
}

/// Compares two eventually periodic encodings index by index over one
/// common period after both preperiods.
fn tails_agree(pre: (usize, usize), per: (usize, usize), same: impl Fn(usize) -> bool) -> bool {
    let start = pre.0.max(pre.1);
    (start..start + per.0.lcm(&per.1)).all(same)
}

/// `s ~ t`: equal vertices and projectively equal points from some index on.
pub fn equivalent(s: &PointDataSequence, t: &PointDataSequence) -> Result<bool> {
    if s.quiver.vertices != t.quiver.vertices || s.quiver.arrows != t.quiver.arrows {
        return Err(Error::QuiverMismatch);
    }
    Ok(tails_agree(
        (s.preperiod.len(), t.preperiod.len()),
        (s.period.len(), t.period.len()),
        |k| {
            let (a, b) = (s.term(k), t.term(k));
            a.vertex == b.vertex && a.point.same_point(&b.point)
        },
    ))
}

/// `(1)` with `n` loops, carrying `points` as a periodic sequence.
pub fn wild_family(n: usize, points: Vec<ProjectivePoint>) -> Result<PointDataSequence> {
    if n < 2 {
        return Err(Error::InvalidParameter("wild families need n >= 2".into()));
    }
    if points.is_empty() {
        return Err(Error::InvalidSequence("at least one point is required".into()));
    }
    let quiver = quiver_of(&type1(n, 1));
    let vertex = quiver.vertices[0].clone();
    let period = points
        .into_iter()
        .map(|point| PointDatum {
            vertex: vertex.clone(),
            point,
        })
        .collect();
    PointDataSequence::new(quiver, Vec::new(), period)
}

/// Degree `k` of a point representation: the basis vector `e_{vertex}` and
/// the scalars by which the arrows `vertex → target` send it to degree
/// `k + 1`. All other arrows act by zero.
#[derive(Clone, Debug)]
pub struct DegreePiece {
    pub vertex: Label,
    pub target: Label,
    pub coefficients: Vec<BigRational>,
}

/// A graded module, one-dimensional in each degree from `start_degree` on,
/// given by an eventually periodic list of degree pieces.
#[derive(Clone, Debug)]
pub struct PointRepresentation {
    pub quiver: Quiver,
    pub start_degree: usize,
    pub preperiod: Vec<DegreePiece>,
    pub period: Vec<DegreePiece>,
}

impl PointRepresentation {
    /// The piece in degree `start_degree + k`.
    pub fn piece(&self, k: usize) -> &DegreePiece {
        match self.preperiod.get(k) {
            Some(p) => p,
            None => &self.period[(k - self.preperiod.len()) % self.period.len()],
        }
    }

    /// Whether the two modules agree degreewise, up to rescaling each
    /// action, in all large degrees.
    pub fn tail_isomorphic(&self, other: &PointRepresentation) -> bool {
        self.start_degree == other.start_degree
            && self.quiver == other.quiver
            && tails_agree(
                (self.preperiod.len(), other.preperiod.len()),
                (self.period.len(), other.period.len()),
                |k| {
                    let (a, b) = (self.piece(k), other.piece(k));
                    a.vertex == b.vertex && a.target == b.target && projectively_equal(&a.coefficients, &b.coefficients)
                },
            )
    }
}

/// The representation with basis `e_{λ_k}` and `a · e_{λ_k} = ⟨x_k, a⟩ e_{λ_{k+1}}`.
pub fn point_representation(s: &PointDataSequence) -> PointRepresentation {
    let piece = |k: usize| {
        let t = s.term(k);
        DegreePiece {
            vertex: t.vertex.clone(),
            target: s.term(k + 1).vertex.clone(),
            coefficients: t.point.coords.clone(),
        }
    };
    let pre = s.preperiod.len();
    PointRepresentation {
        quiver: s.quiver.clone(),
        start_degree: 0,
        preperiod: (0..pre).map(piece).collect(),
        period: (pre..pre + s.period.len()).map(piece).collect(),
    }
}

/// Checks one-dimensionality and cyclicity over the first `check_degrees`
/// degrees: every piece sits at a quiver vertex, its coefficients match the
/// arrows to the next piece, and some coefficient into each later degree is
/// nonzero.
pub fn is_point_representation(m: &PointRepresentation, check_degrees: usize) -> bool {
    if m.period.is_empty() {
        return false;
    }
    (0..check_degrees).all(|k| {
        let piece = m.piece(k);
        let Some(from) = m.quiver.index_of(&piece.vertex) else {
            return false;
        };
        if k + 1 == check_degrees {
            return true;
        }
        let next = m.piece(k + 1);
        let Some(to) = m.quiver.index_of(&piece.target) else {
            return false;
        };
        piece.target == next.vertex
            && piece.coefficients.len() as u64 == m.quiver.arrow_count(from, to)
            && piece.coefficients.iter().any(|c| !c.is_zero())
    })
}
