//! Body specifications (`kind:key=value,...`) and the registry of body kinds.

use super::body::ConvexBody;
use super::point::Point;
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

/// Vertex count used for disks and ellipses unless `k` is given.
pub const DEFAULT_SMOOTH_VERTICES: usize = 4096;

/// A parsed body specification such as `disk:area=1e4,k=4096`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BodySpec {
    pub kind: String,
    pub params: BTreeMap<String, f64>,
}

impl BodySpec {
    pub fn new(kind: impl Into<String>) -> Self {
        BodySpec { kind: kind.into(), params: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.params.get(key).copied()
    }

    fn positive(&self, key: &str) -> Result<Option<f64>> {
        match self.get(key) {
            None => Ok(None),
            Some(v) if v > 0.0 && v.is_finite() => Ok(Some(v)),
            Some(v) => Err(Error::param(key, format!("must be positive, got {v}"))),
        }
    }

    fn require_positive(&self, key: &str) -> Result<f64> {
        self.positive(key)?
            .ok_or_else(|| Error::param(key, format!("required for `{}` bodies", self.kind)))
    }

    fn count(&self, key: &str, default: Option<usize>) -> Result<usize> {
        match self.get(key) {
            None => default.ok_or_else(|| Error::param(key, format!("required for `{}` bodies", self.kind))),
            Some(v) if v.fract() == 0.0 && v >= 3.0 && v <= 1e7 => Ok(v as usize),
            Some(v) => Err(Error::param(key, format!("must be an integer >= 3, got {v}"))),
        }
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        for k in self.params.keys() {
            if !allowed.contains(&k.as_str()) {
                return Err(Error::param(k.clone(), format!("unknown for `{}` bodies", self.kind)));
            }
        }
        Ok(())
    }
}

impl fmt::Display for BodySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        let mut sep = ':';
        for (k, v) in &self.params {
            write!(f, "{sep}{k}={v}")?;
            sep = ',';
        }
        Ok(())
    }
}

impl FromStr for BodySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: String| Error::BodySpec { spec: s.to_string(), reason };
        let s_trim = s.trim();
        let (kind, rest) = match s_trim.split_once(':') {
            Some((k, r)) => (k.trim(), r.trim()),
            None => (s_trim, ""),
        };
        if kind.is_empty() {
            return Err(bad("missing body kind".into()));
        }
        let mut spec = BodySpec::new(kind);
        if !rest.is_empty() {
            for item in rest.split(',') {
                let (k, v) = item
                    .split_once('=')
                    .ok_or_else(|| bad(format!("expected key=value, got `{item}`")))?;
                let k = k.trim();
                let v: f64 = v
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("value of `{k}` is not a number: `{}`", v.trim())))?;
                if spec.params.insert(k.to_string(), v).is_some() {
                    return Err(bad(format!("duplicate key `{k}`")));
                }
            }
        }
        Ok(spec)
    }
}

/// A family of bodies constructible from a [`BodySpec`].
pub trait BodyKind: Send + Sync {
    fn name(&self) -> &'static str;
    fn build(&self, spec: &BodySpec) -> Result<ConvexBody>;
}

/// Body kinds addressable by name.
pub struct BodyRegistry {
    kinds: BTreeMap<&'static str, Box<dyn BodyKind>>,
}

impl BodyRegistry {
    pub fn empty() -> Self {
        BodyRegistry { kinds: BTreeMap::new() }
    }

    pub fn register(&mut self, kind: Box<dyn BodyKind>) {
        self.kinds.insert(kind.name(), kind);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.kinds.keys().copied().collect()
    }

    pub fn build(&self, spec: &BodySpec) -> Result<ConvexBody> {
        let kind = self.kinds.get(spec.kind.as_str()).ok_or_else(|| Error::BodySpec {
            spec: spec.to_string(),
            reason: format!("unknown kind `{}` (known: {})", spec.kind, self.names().join(", ")),
        })?;
        kind.build(spec)
    }
}

impl Default for BodyRegistry {
    fn default() -> Self {
        let mut r = BodyRegistry::empty();
        r.register(Box::new(Square));
        r.register(Box::new(RegularPolygon));
        r.register(Box::new(Disk));
        r.register(Box::new(Ellipse));
        r.register(Box::new(Triangle));
        r.register(Box::new(RandomPolygon));
        r
    }
}

/// Build a body from a spec using the default registry.
pub fn make_body(spec: &BodySpec) -> Result<ConvexBody> {
    BodyRegistry::default().build(spec)
}

fn finish(body: ConvexBody, area: Option<f64>) -> Result<ConvexBody> {
    match area {
        Some(a) => body.rescaled_to_area(a),
        None => Ok(body),
    }
}

/// Regular k-gon with unit circumradius centred at the origin, first vertex
/// at angle `-π/2 + π/k` so that the bottom edge is horizontal.
fn regular(k: usize) -> Vec<Point> {
    let phase = -PI / 2.0 - PI / k as f64;
    (0..k)
        .map(|i| {
            let a = phase + TAU * i as f64 / k as f64;
            Point::new(a.cos(), a.sin())
        })
        .collect()
}

/// `square:side=s` or `square:area=a`; occupies `[0, s]²`.
struct Square;

impl BodyKind for Square {
    fn name(&self) -> &'static str {
        "square"
    }

    fn build(&self, spec: &BodySpec) -> Result<ConvexBody> {
        spec.check_keys(&["side", "area"])?;
        let side = match (spec.positive("side")?, spec.positive("area")?) {
            (Some(s), None) => s,
            (None, Some(a)) => a.sqrt(),
            (Some(s), Some(a)) => {
                if ((s * s - a) / a).abs() > 1e-12 {
                    return Err(Error::param("area", format!("conflicts with side={s}")));
                }
                s
            }
            (None, None) => return Err(Error::param("side", "square needs `side` or `area`")),
        };
        ConvexBody::new(vec![
            Point::new(0.0, 0.0),
            Point::new(side, 0.0),
            Point::new(side, side),
            Point::new(0.0, side),
        ])
    }
}

/// `ngon:k=..,area=..`: regular polygon centred at the origin.
struct RegularPolygon;

impl BodyKind for RegularPolygon {
    fn name(&self) -> &'static str {
        "ngon"
    }

    fn build(&self, spec: &BodySpec) -> Result<ConvexBody> {
        spec.check_keys(&["k", "area"])?;
        let k = spec.count("k", None)?;
        let area = spec.require_positive("area")?;
        finish(ConvexBody::new(regular(k))?, Some(area))
    }
}

/// `disk:area=..[,k=4096]`: a fine regular polygon.
struct Disk;

impl BodyKind for Disk {
    fn name(&self) -> &'static str {
        "disk"
    }

    fn build(&self, spec: &BodySpec) -> Result<ConvexBody> {
        spec.check_keys(&["k", "area"])?;
        let k = spec.count("k", Some(DEFAULT_SMOOTH_VERTICES))?;
        let area = spec.require_positive("area")?;
        finish(ConvexBody::new(regular(k))?, Some(area))
    }
}

/// `ellipse:area=..,ratio=..[,angle=..][,k=4096]`: affine image of a disk
/// with semi-axis ratio `ratio`, major axis at `angle`.
struct Ellipse;

impl BodyKind for Ellipse {
    fn name(&self) -> &'static str {
        "ellipse"
    }

    fn build(&self, spec: &BodySpec) -> Result<ConvexBody> {
        spec.check_keys(&["k", "area", "ratio", "angle"])?;
        let k = spec.count("k", Some(DEFAULT_SMOOTH_VERTICES))?;
        let area = spec.require_positive("area")?;
        let ratio = spec.require_positive("ratio")?;
        let angle = spec.get("angle").unwrap_or(0.0);
        let (s, c) = angle.sin_cos();
        let (a, b) = (ratio.sqrt(), 1.0 / ratio.sqrt());
        let pts = regular(k)
            .into_iter()
            .map(|p| {
                let q = Point::new(a * p.x, b * p.y);
                Point::new(c * q.x - s * q.y, s * q.x + c * q.y)
            })
            .collect();
        finish(ConvexBody::new(pts)?, Some(area))
    }
}

/// `triangle:a=..,b=..[,skew=..][,area=..]`: vertices `(0,0)`, `(a,0)`,
/// `(skew,b)`. With only `area`, a right isosceles triangle.
struct Triangle;

impl BodyKind for Triangle {
    fn name(&self) -> &'static str {
        "triangle"
    }

    fn build(&self, spec: &BodySpec) -> Result<ConvexBody> {
        spec.check_keys(&["a", "b", "skew", "area"])?;
        let area = spec.positive("area")?;
        let (a, b) = match (spec.positive("a")?, spec.positive("b")?, area) {
            (Some(a), Some(b), _) => (a, b),
            (Some(a), None, _) => (a, a),
            (None, None, Some(ar)) => ((2.0 * ar).sqrt(), (2.0 * ar).sqrt()),
            _ => return Err(Error::param("a", "triangle needs `a` (and optionally `b`) or `area`")),
        };
        let skew = spec.get("skew").unwrap_or(0.0);
        let body = ConvexBody::new(vec![Point::new(0.0, 0.0), Point::new(a, 0.0), Point::new(skew, b)])?;
        finish(body, area)
    }
}

/// `random:k=..,seed=..,area=..`: `k` points at seeded random angles on an
/// ellipse of random eccentricity and orientation, rescaled to `area`.
/// Every point is extreme, so the body has exactly `k` vertices unless two
/// angles nearly coincide.
struct RandomPolygon;

impl BodyKind for RandomPolygon {
    fn name(&self) -> &'static str {
        "random"
    }

    fn build(&self, spec: &BodySpec) -> Result<ConvexBody> {
        spec.check_keys(&["k", "seed", "area"])?;
        let k = spec.count("k", None)?;
        let seed = spec
            .get("seed")
            .ok_or_else(|| Error::param("seed", "required for `random` bodies"))?;
        if seed < 0.0 || seed.fract() != 0.0 || seed > 9.0e15 {
            return Err(Error::param("seed", format!("must be a non-negative integer, got {seed}")));
        }
        let area = spec.require_positive("area")?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed as u64);
        let stretch: f64 = rng.random_range(1.0..2.5);
        let tilt: f64 = rng.random_range(0.0..PI);
        let (s, c) = tilt.sin_cos();
        let mut angles: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let pts: Vec<Point> = angles
            .iter()
            .map(|&a| {
                let q = Point::new(stretch * a.cos(), a.sin() / stretch);
                Point::new(c * q.x - s * q.y, s * q.x + c * q.y)
            })
            .collect();
        let body = ConvexBody::from_points(&pts)
            .map_err(|e| Error::Degenerate(format!("random body hull: {e}")))?;
        finish(body, Some(area))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        let s: BodySpec = "disk:area=1e4,k=4096".parse().unwrap();
        assert_eq!(s.kind, "disk");
        assert_eq!(s.get("area"), Some(1e4));
        assert_eq!(s.to_string(), "disk:area=10000,k=4096");
        assert!("disk:area".parse::<BodySpec>().is_err());
        assert!("disk:area=abc".parse::<BodySpec>().is_err());
        assert!(":x=1".parse::<BodySpec>().is_err());
    }

    #[test]
    fn square_by_side() {
        let b = make_body(&"square:side=10".parse().unwrap()).unwrap();
        assert_eq!(b.len(), 4);
        assert_eq!(b.area(), 100.0);
    }

    #[test]
    fn disk_has_requested_area() {
        let b = make_body(&BodySpec::new("disk").with("area", PI)).unwrap();
        assert_eq!(b.len(), 4096);
        assert!(((b.area() - PI) / PI).abs() < 1e-12);
        let r = b.vertices()[0].dist(b.centroid());
        assert!((r - 1.0).abs() < 1e-6);
    }

    #[test]
    fn random_is_deterministic() {
        let spec: BodySpec = "random:k=20,seed=7,area=300".parse().unwrap();
        let a = make_body(&spec).unwrap();
        let b = make_body(&spec).unwrap();
        assert_eq!(a.vertices(), b.vertices());
        assert!(((a.area() - 300.0) / 300.0).abs() < 1e-12);
        assert_eq!(a.len(), 20);
        let other = make_body(&"random:k=20,seed=8,area=300".parse().unwrap()).unwrap();
        assert_ne!(a.vertices(), other.vertices());
    }

    #[test]
    fn rejects_bad_parameters() {
        let err = make_body(&"disk:area=-1".parse().unwrap()).unwrap_err();
        assert!(err.to_string().contains("area"), "{err}");
        assert!(make_body(&"ngon:k=2,area=1".parse().unwrap()).is_err());
        assert!(make_body(&"random:k=20,area=3".parse().unwrap()).is_err());
        assert!(make_body(&"square:side=0".parse().unwrap()).is_err());
        assert!(make_body(&"square:side=1,colour=2".parse().unwrap()).is_err());
        assert!(make_body(&"blob:area=1".parse().unwrap()).is_err());
    }

    #[test]
    fn every_kind_hits_its_area() {
        for s in [
            "ngon:k=7,area=50",
            "disk:area=1600,k=512",
            "ellipse:area=900,ratio=3,angle=0.4,k=256",
            "triangle:a=3,b=5,skew=1,area=77",
            "random:k=12,seed=3,area=2000",
        ] {
            let b = make_body(&s.parse().unwrap()).unwrap();
            let want = s.parse::<BodySpec>().unwrap().get("area").unwrap();
            assert!(((b.area() - want) / want).abs() < 1e-12, "{s}: {}", b.area());
        }
    }
}
