//! Rooted polylines in the unit disk, with exact rational predicates, and the
//! ordered intersection graph they define.

use std::cmp::Ordering;

use num::{BigInt, BigRational, One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ordered::OrderedGraph;

pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Point {
        Point { x, y }
    }

    pub fn from_ints(x: (i64, i64), y: (i64, i64)) -> Point {
        let q = |(p, d): (i64, i64)| Q::new(BigInt::from(p), BigInt::from(d));
        Point::new(q(x), q(y))
    }

    fn norm2(&self) -> Q {
        &self.x * &self.x + &self.y * &self.y
    }
}

/// Polylines whose first point (the root) lies on the unit circle and whose
/// remaining points lie strictly inside it. String `i` becomes vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringDiagram {
    strings: Vec<Vec<Point>>,
}

impl StringDiagram {
    pub fn new(strings: Vec<Vec<Point>>) -> Result<StringDiagram> {
        let d = StringDiagram { strings };
        d.validate()?;
        Ok(d)
    }

    pub fn strings(&self) -> &[Vec<Point>] {
        &self.strings
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    pub fn root(&self, i: usize) -> &Point {
        &self.strings[i][0]
    }

    // the disk is convex, so interior points keep every segment off the
    // boundary except at the root
    fn validate(&self) -> Result<()> {
        let one = Q::one();
        for (i, s) in self.strings.iter().enumerate() {
            if s.len() < 2 {
                return Err(Error::invalid(format!("string {i} needs at least two points")));
            }
            if s[0].norm2() != one {
                return Err(Error::invalid(format!("root of string {i} is not on the unit circle")));
            }
            if let Some(j) = s[1..].iter().position(|p| p.norm2() >= one) {
                return Err(Error::invalid(format!("point {} of string {i} is not strictly inside the disk", j + 1)));
            }
            if let Some(j) = (0..i).find(|&j| self.strings[j][0] == s[0]) {
                return Err(Error::invalid(format!("strings {j} and {i} share a root")));
            }
        }
        Ok(())
    }
}

fn cross(o: &Point, a: &Point, b: &Point) -> Q {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

fn orientation(o: &Point, a: &Point, b: &Point) -> Ordering {
    cross(o, a, b).cmp(&Q::zero())
}

/// `p` is on segment `ab`, given that the three are collinear.
fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    let within = |u: &Q, v: &Q, w: &Q| (u.min(v) <= w) && (w <= u.max(v));
    within(&a.x, &b.x, &p.x) && within(&a.y, &b.y, &p.y)
}

/// Closed segments `ab` and `cd` share a point.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let d1 = orientation(c, d, a);
    let d2 = orientation(c, d, b);
    let d3 = orientation(a, b, c);
    let d4 = orientation(a, b, d);
    use Ordering::*;
    if ((d1 == Greater && d2 == Less) || (d1 == Less && d2 == Greater))
        && ((d3 == Greater && d4 == Less) || (d3 == Less && d4 == Greater))
    {
        return true;
    }
    (d1 == Equal && on_segment(c, d, a))
        || (d2 == Equal && on_segment(c, d, b))
        || (d3 == Equal && on_segment(a, b, c))
        || (d4 == Equal && on_segment(a, b, d))
}

pub fn polylines_intersect(p: &[Point], q: &[Point]) -> bool {
    p.windows(2)
        .any(|s| q.windows(2).any(|t| segments_intersect(&s[0], &s[1], &t[0], &t[1])))
}

/// Counterclockwise angle comparison of nonzero vectors from the origin.
fn angle_cmp(a: &Point, b: &Point) -> Ordering {
    let half = |p: &Point| !(p.y.is_positive() || (p.y.is_zero() && p.x.is_positive()));
    let origin = Point::new(Q::zero(), Q::zero());
    half(a)
        .cmp(&half(b))
        .then_with(|| Q::zero().cmp(&cross(&origin, a, b)))
}

/// Strings in clockwise root order, starting from the root with the
/// lexicographically least `(x, y)`.
pub fn clockwise_root_order(d: &StringDiagram) -> Vec<usize> {
    let mut order: Vec<usize> = (0..d.len()).collect();
    order.sort_by(|&i, &j| angle_cmp(d.root(j), d.root(i)));
    if let Some(start) = (0..d.len()).min_by(|&i, &j| {
        let (a, b) = (d.root(i), d.root(j));
        a.x.cmp(&b.x).then_with(|| a.y.cmp(&b.y))
    }) {
        let at = order.iter().position(|&v| v == start).unwrap();
        order.rotate_left(at);
    }
    order
}

pub fn intersection_graph(d: &StringDiagram) -> Graph {
    let s = d.strings();
    let n = s.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if polylines_intersect(&s[i], &s[j]) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges).expect("pairs are in range")
}

/// The intersection graph ordered clockwise by roots; always ×-free.
pub fn outer_string_graph(d: &StringDiagram) -> OrderedGraph {
    OrderedGraph::new(intersection_graph(d), clockwise_root_order(d)).expect("root order is a permutation")
}

/// A rational point on the unit circle from parameter `s`.
pub fn circle_point(s: &Q) -> Point {
    let one = Q::one();
    let s2 = s * s;
    let den = &one + &s2;
    Point::new((&one - &s2) / &den, (s + s) / den)
}

/// `n` strings with `segs` segments each. Roots come from random circle
/// parameters and inner points from a grid of step `1/den`, both resampled
/// until the diagram is valid.
pub fn random_string_diagram<R: Rng>(n: usize, segs: usize, rng: &mut R) -> StringDiagram {
    const DEN: i64 = 64;
    let segs = segs.max(1);
    let q = |p: i64, d: i64| Q::new(BigInt::from(p), BigInt::from(d));
    loop {
        let mut strings: Vec<Vec<Point>> = Vec::with_capacity(n);
        for _ in 0..n {
            let root = loop {
                // parameters in [-4, 4] cover most of the circle
                let p = circle_point(&q(rng.gen_range(-4 * DEN..=4 * DEN), DEN));
                if strings.iter().all(|s| s[0] != p) {
                    break p;
                }
            };
            let mut s = vec![root];
            while s.len() <= segs {
                let p = Point::new(q(rng.gen_range(-DEN + 1..DEN), DEN), q(rng.gen_range(-DEN + 1..DEN), DEN));
                if p.norm2() < Q::one() {
                    s.push(p);
                }
            }
            strings.push(s);
        }
        if let Ok(d) = StringDiagram::new(strings) {
            return d;
        }
    }
}
