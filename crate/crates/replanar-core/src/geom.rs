//! Exact rational plane geometry: points, orientation, segment
//! intersection, and angular comparison of directions. No floating point in
//! any predicate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn q_ratio(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pt {
    pub x: Q,
    pub y: Q,
}

impl Pt {
    pub fn new(x: Q, y: Q) -> Pt {
        Pt { x, y }
    }
    pub fn of(x: i64, y: i64) -> Pt {
        Pt::new(q(x), q(y))
    }
    pub fn sub(&self, o: &Pt) -> Pt {
        Pt::new(&self.x - &o.x, &self.y - &o.y)
    }
    pub fn add(&self, o: &Pt) -> Pt {
        Pt::new(&self.x + &o.x, &self.y + &o.y)
    }
    pub fn scale(&self, s: &Q) -> Pt {
        Pt::new(&self.x * s, &self.y * s)
    }
    pub fn neg(&self) -> Pt {
        Pt::new(-self.x.clone(), -self.y.clone())
    }
    pub fn cross(&self, o: &Pt) -> Q {
        &self.x * &o.y - &self.y * &o.x
    }
    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

/// Sign of the signed area of (a, b, c): +1 counterclockwise, -1 clockwise.
pub fn orient(a: &Pt, b: &Pt, c: &Pt) -> i8 {
    let v = b.sub(a).cross(&c.sub(a));
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

fn between_collinear(a: &Pt, b: &Pt, p: &Pt) -> bool {
    // assumes a, b, p collinear: is p within the closed segment [a, b]?
    let (lo_x, hi_x) = if a.x <= b.x {
        (&a.x, &b.x)
    } else {
        (&b.x, &a.x)
    };
    let (lo_y, hi_y) = if a.y <= b.y {
        (&a.y, &b.y)
    } else {
        (&b.y, &a.y)
    };
    lo_x <= &p.x && &p.x <= hi_x && lo_y <= &p.y && &p.y <= hi_y
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegInter {
    Empty,
    /// A single common point.
    Point(Pt),
    /// Segments share more than one point.
    Overlap,
}

/// Exact intersection of closed segments [a,b] and [c,d].
pub fn seg_intersection(a: &Pt, b: &Pt, c: &Pt, d: &Pt) -> SegInter {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 == 0 && o2 == 0 {
        // collinear
        let mut common: Vec<&Pt> = Vec::new();
        for p in [c, d] {
            if between_collinear(a, b, p) {
                common.push(p);
            }
        }
        for p in [a, b] {
            if between_collinear(c, d, p) && !common.iter().any(|q| *q == p) {
                common.push(p);
            }
        }
        return match common.len() {
            0 => SegInter::Empty,
            1 => SegInter::Point(common[0].clone()),
            _ => {
                // distinct common points => positive-length overlap
                let all_eq = common.windows(2).all(|w| w[0] == w[1]);
                if all_eq {
                    SegInter::Point(common[0].clone())
                } else {
                    SegInter::Overlap
                }
            }
        };
    }
    if o1 != o2 && o3 != o4 && (o1 * o2 <= 0) && (o3 * o4 <= 0) {
        // touching or proper: compute the point on line(a,b) meeting line(c,d)
        let r = b.sub(a);
        let s = d.sub(c);
        let denom = r.cross(&s);
        if denom.is_zero() {
            // one segment's endpoint lies on the other (collinear single touch)
            for p in [c, d] {
                if orient(a, b, p) == 0 && between_collinear(a, b, p) {
                    return SegInter::Point(p.clone());
                }
            }
            for p in [a, b] {
                if orient(c, d, p) == 0 && between_collinear(c, d, p) {
                    return SegInter::Point(p.clone());
                }
            }
            return SegInter::Empty;
        }
        let t = c.sub(a).cross(&s) / denom.clone();
        if t < Q::zero() || t > Q::one() {
            return SegInter::Empty;
        }
        let p = Pt::new(&a.x + &t * &r.x, &a.y + &t * &r.y);
        if between_collinear(c, d, &p) || orient(c, d, &p) == 0 {
            return SegInter::Point(p);
        }
        return SegInter::Empty;
    }
    SegInter::Empty
}

/// Total angular order on nonzero direction vectors, counterclockwise from
/// the positive x-axis.
pub fn cmp_angle(u: &Pt, v: &Pt) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    assert!(!u.is_zero() && !v.is_zero(), "zero direction");
    let half = |p: &Pt| -> u8 {
        // 0: angle in [0, pi), 1: [pi, 2pi)
        if p.y.is_positive() || (p.y.is_zero() && p.x.is_positive()) {
            0
        } else {
            1
        }
    };
    let hu = half(u);
    let hv = half(v);
    if hu != hv {
        return hu.cmp(&hv);
    }
    let c = u.cross(v);
    if c.is_positive() {
        Ordering::Less
    } else if c.is_negative() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

/// Is `x` strictly inside the sector sweeping counterclockwise from `from`
/// to `to`? (All vectors nonzero; `from` != `to` as directions.)
pub fn in_ccw_sector(from: &Pt, to: &Pt, x: &Pt) -> bool {
    use std::cmp::Ordering::*;
    let fx = cmp_angle(from, x);
    let xt = cmp_angle(x, to);
    let ft = cmp_angle(from, to);
    if fx == Equal || xt == Equal {
        return false;
    }
    match ft {
        Less => fx == Less && xt == Less,
        Greater => fx == Less || xt == Less,
        Equal => true, // full circle minus the boundary ray
    }
}

/// The four local directions around a transversal meeting point must
/// alternate between the two curves.
pub fn is_transversal(e_dirs: (&Pt, &Pt), f_dirs: (&Pt, &Pt)) -> bool {
    let (e1, e2) = e_dirs;
    let (f1, f2) = f_dirs;
    // all four directions must be pairwise distinct as angles
    let dirs = [e1, e2, f1, f2];
    for i in 0..4 {
        for j in i + 1..4 {
            if cmp_angle(dirs[i], dirs[j]) == std::cmp::Ordering::Equal {
                return false;
            }
        }
    }
    // f's directions must be separated by e's local curve
    in_ccw_sector(e1, e2, f1) != in_ccw_sector(e1, e2, f2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seg_basics() {
        let a = Pt::of(0, 0);
        let b = Pt::of(4, 0);
        let c = Pt::of(2, -1);
        let d = Pt::of(2, 3);
        assert_eq!(seg_intersection(&a, &b, &c, &d), SegInter::Point(Pt::of(2, 0)));
        let e = Pt::of(5, 1);
        let f = Pt::of(6, 2);
        assert_eq!(seg_intersection(&a, &b, &e, &f), SegInter::Empty);
        assert_eq!(
            seg_intersection(&a, &b, &Pt::of(1, 0), &Pt::of(3, 0)),
            SegInter::Overlap
        );
        assert_eq!(
            seg_intersection(&a, &b, &b, &Pt::of(7, 5)),
            SegInter::Point(Pt::of(4, 0))
        );
    }

    #[test]
    fn angles() {
        let e = Pt::of(1, 0);
        let n = Pt::of(0, 1);
        let w = Pt::of(-1, 0);
        let s = Pt::of(0, -1);
        assert!(cmp_angle(&e, &n).is_lt());
        assert!(cmp_angle(&n, &w).is_lt());
        assert!(cmp_angle(&w, &s).is_lt());
        assert!(in_ccw_sector(&e, &w, &n));
        assert!(!in_ccw_sector(&e, &w, &s));
        assert!(in_ccw_sector(&w, &e, &s));
        assert!(is_transversal((&e, &w), (&n, &s)));
        assert!(!is_transversal((&e, &w), (&n, &Pt::of(1, 1))));
    }
}
