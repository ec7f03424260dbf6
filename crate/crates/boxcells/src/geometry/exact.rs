//! Exact rational evaluation of box sections.
//!
//! The closed form behind everything here is the inclusion-exclusion formula
//! for the sublevel volume of a linear functional over a box: for `v > 0`,
//!
//! ```text
//! F(t) = vol{x in [0,n]^d : v.x <= t}
//!      = (1 / (d! prod v_i)) * sum_{S in [d]} (-1)^|S| max(0, t - n*sum_{i in S} v_i)^d
//! ```
//!
//! Its derivative in `t` is the slice volume divided by `|v|`, so the slice's
//! true `(d-1)`-volume, the strip volume, and `V_d(v) = (|v|_1/|v|) * max_t
//! vol(A(v,t) cap Q^d)` all reduce to rational arithmetic; the `sqrt` factors
//! cancel in `V_d(v)`.
//!
//! Directions with zero coordinates are handled by factoring them out: the
//! body is a prism over the reduced-dimension body, so volumes pick up a
//! factor `n` per dropped coordinate. Negative coordinates are reflected
//! (box symmetries), shifting the threshold.

use super::{BoxSpec, Direction, Slab};
use crate::error::{Error, Result};
use crate::numeric::{binomial, factorial, rat_to_f64, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact general-direction evaluation enumerates `2^d` subsets; beyond this
/// the all-equal fast path or the float path must be used.
pub const MAX_EXACT_DIM: usize = 20;

fn pow_rat(x: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// Reduction of `(v, t)` to positive coordinates with zeros factored out.
struct Reduced {
    coords: Vec<Rat>,
    t: Rat,
    dropped: usize,
}

fn reduce(v: &Direction<Rat>, t: &Rat, side: &Rat) -> Reduced {
    let mut coords = Vec::with_capacity(v.dim());
    let mut t = t.clone();
    let mut dropped = 0;
    for c in v.coords() {
        if c.is_zero() {
            dropped += 1;
        } else if c.is_negative() {
            // reflect x_i -> n - x_i: the threshold shifts by -n*v_i
            t -= side * c;
            coords.push(-c.clone());
        } else {
            coords.push(c.clone());
        }
    }
    Reduced { coords, t, dropped }
}

/// `sum_{S} (-1)^|S| max(0, t - n*sum_{i in S} v_i)^power` by depth-first
/// enumeration with running partial sums. All `v_i > 0`; terms with
/// `t - n*sum <= 0` vanish, which prunes whole subtrees because the partial
/// sums only grow.
fn signed_subset_sum(coords: &[Rat], t: &Rat, side: &Rat, power: usize) -> Rat {
    fn rec(scaled: &[Rat], idx: usize, rest: &Rat, negate: bool, power: usize, acc: &mut Rat) {
        if rest.is_negative() || rest.is_zero() {
            return;
        }
        if idx == scaled.len() {
            let term = pow_rat(rest, power);
            if negate {
                *acc -= term;
            } else {
                *acc += term;
            }
            return;
        }
        rec(scaled, idx + 1, rest, negate, power, acc);
        let next = rest - &scaled[idx];
        rec(scaled, idx + 1, &next, !negate, power, acc);
    }
    let scaled: Vec<Rat> = coords.iter().map(|c| c * side).collect();
    let mut acc = Rat::zero();
    rec(&scaled, 0, t, false, power, &mut acc);
    acc
}

/// `vol{x in [0,n]^d : v.x <= t}`, exact. Requires every `v_i > 0`.
pub fn halfspace_box_volume(v: &Direction<Rat>, t: &Rat, box_: &BoxSpec<Rat>) -> Result<Rat> {
    if v.dim() != box_.dim {
        return Err(Error::DimensionMismatch);
    }
    if let Some(i) = v.coords().iter().position(|c| !c.is_positive()) {
        return Err(Error::NonPositiveCoordinate(i));
    }
    let d = v.dim();
    if d > MAX_EXACT_DIM {
        return Err(Error::DimensionTooLarge {
            dim: d,
            max: MAX_EXACT_DIM,
        });
    }
    let n = &box_.side;
    let full: Rat = v.l1() * n;
    let box_volume = pow_rat(n, d);
    if t >= &full {
        return Ok(box_volume);
    }
    if !t.is_positive() {
        return Ok(Rat::zero());
    }
    let sum = signed_subset_sum(v.coords(), t, n, d);
    let prod: Rat = v.coords().iter().product();
    Ok(sum / (Rat::from_integer(factorial(d)) * prod))
}

/// The derivative `F'(t)`, i.e. `vol_{d-1}(A(v,t) cap [0,n]^d) / |v|`, exact.
/// Accepts any nonzero rational direction.
///
/// This is the scale-free core of [`slice_volume`]: multiplying by the
/// (generally irrational) `|v|` yields the true `(d-1)`-volume.
pub fn slice_density(v: &Direction<Rat>, t: &Rat, box_: &BoxSpec<Rat>) -> Result<Rat> {
    if v.dim() != box_.dim {
        return Err(Error::DimensionMismatch);
    }
    let n = &box_.side;
    let red = reduce(v, t, n);
    let k = red.coords.len();
    let prism = pow_rat(n, red.dropped);
    if k == 0 {
        return Err(Error::ZeroDirection);
    }
    if k > MAX_EXACT_DIM {
        return Err(Error::DimensionTooLarge {
            dim: k,
            max: MAX_EXACT_DIM,
        });
    }
    if k == 1 {
        // The slice is a facet-parallel prism; closed membership at the ends.
        let hi = &red.coords[0] * n;
        if red.t >= Rat::zero() && red.t <= hi {
            return Ok(prism / &red.coords[0]);
        }
        return Ok(Rat::zero());
    }
    let full: Rat = red.coords.iter().sum::<Rat>() * n;
    // outside the open range the section is empty or a single vertex
    if !red.t.is_positive() || red.t >= full {
        return Ok(Rat::zero());
    }
    let sum = signed_subset_sum(&red.coords, &red.t, n, k - 1);
    let prod: Rat = red.coords.iter().product();
    Ok(sum * prism / (Rat::from_integer(factorial(k - 1)) * prod))
}

/// True `(d-1)`-volume of the hyperplane slice `A(v,t) cap [0,n]^d`.
pub fn slice_volume(v: &Direction<Rat>, t: &Rat, box_: &BoxSpec<Rat>) -> Result<f64> {
    let density = slice_density(v, t, box_)?;
    Ok(rat_to_f64(&density) * v.l2_f64())
}

/// Volume of the strip `{t - width < v.x < t}` inside the box, exact.
pub fn strip_volume(slab: &Slab<Rat>, box_: &BoxSpec<Rat>) -> Result<Rat> {
    if slab.v.dim() != box_.dim {
        return Err(Error::DimensionMismatch);
    }
    if !slab.width.is_positive() {
        return Err(Error::InvalidWidth);
    }
    let n = &box_.side;
    let red = reduce(&slab.v, &slab.t, n);
    let k = red.coords.len();
    if k == 0 {
        return Err(Error::ZeroDirection);
    }
    let prism = pow_rat(n, red.dropped);
    let dir = Direction::new(red.coords)?;
    let rbox = BoxSpec::new(k, n.clone())?;
    let upper = halfspace_box_volume(&dir, &red.t, &rbox)?;
    let lower = halfspace_box_volume(&dir, &(&red.t - &slab.width), &rbox)?;
    let vol = (upper - lower) * prism;
    let cap = pow_rat(n, box_.dim);
    Ok(vol.max(Rat::zero()).min(cap))
}

/// `V_d(e)` for the all-ones direction, exact:
/// `d/(d-1)! * sum_k (-1)^k C(d,k) (d/2 - k)^(d-1)`.
pub fn vd_all_ones(d: usize) -> Result<Rat> {
    if d == 0 {
        return Err(Error::DimensionMismatch);
    }
    if d == 1 {
        return Ok(Rat::one());
    }
    let half_d = Rat::new(BigInt::from(d), BigInt::from(2));
    let mut acc = Rat::zero();
    for k in 0..=(d / 2) {
        let base = &half_d - Rat::from_integer(BigInt::from(k));
        if !base.is_positive() {
            break;
        }
        let term = Rat::from_integer(binomial(d, k)) * pow_rat(&base, d - 1);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc * Rat::from_integer(BigInt::from(d)) / Rat::from_integer(factorial(d - 1)))
}

/// `V_d(v) = (|v|_1/|v|) max_t vol_{d-1}(A(v,t) cap Q^d)`, exact for rational
/// `v`: the maximum sits at the central section and the norm factors cancel.
pub fn vd_of_direction(v: &Direction<Rat>) -> Result<Rat> {
    let one = Rat::one();
    let red = reduce(v, &Rat::zero(), &one);
    let k = red.coords.len();
    if k == 0 {
        return Err(Error::ZeroDirection);
    }
    if k == 1 {
        return Ok(Rat::one());
    }
    if red.coords.iter().all(|c| c == &red.coords[0]) {
        return vd_all_ones(k);
    }
    if k > MAX_EXACT_DIM {
        return Err(Error::DimensionTooLarge {
            dim: k,
            max: MAX_EXACT_DIM,
        });
    }
    let l1: Rat = red.coords.iter().sum();
    let t0 = &l1 / (Rat::one() + Rat::one());
    let dir = Direction::new(red.coords)?;
    let ubox = BoxSpec::unit(k)?;
    let density = slice_density(&dir, &t0, &ubox)?;
    Ok(l1 * density)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_int};
    use rand::{Rng, SeedableRng};

    fn dir(coords: &[i64]) -> Direction<Rat> {
        Direction::new(coords.iter().map(|&c| rat_int(c)).collect()).unwrap()
    }

    fn unit_box(d: usize) -> BoxSpec<Rat> {
        BoxSpec::unit(d).unwrap()
    }

    /// Monte-Carlo membership oracle for `vol{x in [0,n]^d : v.x <= t}`.
    fn mc_halfspace_volume(v: &[f64], t: f64, n: f64, samples: u64, seed: u64) -> f64 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let d = v.len();
        let mut hits = 0u64;
        for _ in 0..samples {
            let mut dotp = 0.0;
            for vi in v.iter().take(d) {
                dotp += vi * rng.gen_range(0.0..n);
            }
            if dotp <= t {
                hits += 1;
            }
        }
        hits as f64 / samples as f64 * n.powi(d as i32)
    }

    /// Monte-Carlo slab-thickness oracle for the slice volume: the volume of a
    /// thin slab of (v.x-)width `2h` around `t`, divided by its Euclidean
    /// thickness `2h/|v|`.
    fn mc_slice_volume(v: &[f64], t: f64, n: f64, h: f64, samples: u64, seed: u64) -> f64 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let d = v.len();
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut hits = 0u64;
        for _ in 0..samples {
            let mut dotp = 0.0;
            for vi in v.iter().take(d) {
                dotp += vi * rng.gen_range(0.0..n);
            }
            if (dotp - t).abs() < h {
                hits += 1;
            }
        }
        (hits as f64 / samples as f64 * n.powi(d as i32)) / (2.0 * h / norm)
    }

    #[test]
    fn halfspace_examples() {
        // triangle below the diagonal
        let b = unit_box(2);
        assert_eq!(
            halfspace_box_volume(&dir(&[1, 1]), &rat_int(1), &b).unwrap(),
            rat(1, 2)
        );
        // central symmetry of the cube
        let b3 = unit_box(3);
        assert_eq!(
            halfspace_box_volume(&dir(&[1, 1, 1]), &rat(3, 2), &b3).unwrap(),
            rat(1, 2)
        );
        // v=(1,2), t=2, n=1 -> 3/4, cross-checked by the MC membership oracle
        let exact = halfspace_box_volume(&dir(&[1, 2]), &rat_int(2), &unit_box(2)).unwrap();
        assert_eq!(exact, rat(3, 4));
        let mc = mc_halfspace_volume(&[1.0, 2.0], 2.0, 1.0, 200_000, 7);
        assert!((mc - 0.75).abs() < 0.01, "oracle {mc} vs 3/4");
    }

    #[test]
    fn halfspace_rejects_bad_inputs() {
        let b = unit_box(2);
        assert_eq!(
            halfspace_box_volume(&dir(&[1, 0]), &rat_int(1), &b).unwrap_err(),
            Error::NonPositiveCoordinate(1)
        );
        assert_eq!(
            halfspace_box_volume(&dir(&[1, -1]), &rat_int(1), &b).unwrap_err(),
            Error::NonPositiveCoordinate(1)
        );
    }

    #[test]
    fn slice_examples() {
        // axis-aligned slice of the unit square is a unit segment
        let b = unit_box(2);
        let v = dir(&[1, 0]);
        assert!((slice_volume(&v, &rat(1, 2), &b).unwrap() - 1.0).abs() < 1e-15);

        // diagonal of the unit square: length sqrt(2)
        let got = slice_volume(&dir(&[1, 1]), &rat_int(1), &b).unwrap();
        assert!((got - 2f64.sqrt()).abs() < 1e-12);
        let mc = mc_slice_volume(&[1.0, 1.0], 1.0, 1.0, 0.01, 400_000, 11);
        assert!((mc - 2f64.sqrt()).abs() < 0.05, "oracle {mc}");

        // central hexagon of the cube: area 3*sqrt(3)/4
        let got = slice_volume(&dir(&[1, 1, 1]), &rat(3, 2), &unit_box(3)).unwrap();
        let hexagon = 3.0 * 3f64.sqrt() / 4.0;
        assert!((got - hexagon).abs() < 1e-12);
        // brute-force polygon-area oracle: vertices are the midpoint
        // permutations of (1, 1/2, 0); shoelace in the plane x+y+z=3/2.
        let verts: [[f64; 3]; 6] = [
            [1.0, 0.5, 0.0],
            [0.5, 1.0, 0.0],
            [0.0, 1.0, 0.5],
            [0.0, 0.5, 1.0],
            [0.5, 0.0, 1.0],
            [1.0, 0.0, 0.5],
        ];
        let c = [0.5, 0.5, 0.5];
        let mut area = 0.0;
        for i in 0..6 {
            let a = verts[i];
            let b2 = verts[(i + 1) % 6];
            let u = [a[0] - c[0], a[1] - c[1], a[2] - c[2]];
            let w = [b2[0] - c[0], b2[1] - c[1], b2[2] - c[2]];
            let cross = [
                u[1] * w[2] - u[2] * w[1],
                u[2] * w[0] - u[0] * w[2],
                u[0] * w[1] - u[1] * w[0],
            ];
            area += 0.5 * (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
        }
        assert!((area - hexagon).abs() < 1e-12, "polygon oracle {area}");
    }

    #[test]
    fn slice_handles_signs_and_out_of_range() {
        let b = unit_box(2);
        // reflected diagonal: v=(1,-1), t=0 passes through the centre
        let v = Direction::new(vec![rat_int(1), rat_int(-1)]).unwrap();
        let got = slice_volume(&v, &rat_int(0), &b).unwrap();
        assert!((got - 2f64.sqrt()).abs() < 1e-12);
        // out of range
        assert_eq!(
            slice_density(&dir(&[1, 1]), &rat_int(3), &b).unwrap(),
            Rat::zero()
        );
        assert_eq!(
            slice_density(&dir(&[1, 1]), &rat_int(-1), &b).unwrap(),
            Rat::zero()
        );
    }

    #[test]
    fn strip_examples() {
        // 4 minus two corner triangles of area 1/2
        let b = BoxSpec::new(2, rat_int(2)).unwrap();
        let slab = Slab::new(dir(&[1, 1]), rat_int(3), rat_int(2)).unwrap();
        assert_eq!(strip_volume(&slab, &b).unwrap(), rat_int(3));

        // axis slab 1 x 2
        let slab = Slab::new(dir(&[1, 0]), rat_int(2), rat_int(1)).unwrap();
        assert_eq!(strip_volume(&slab, &b).unwrap(), rat_int(2));

        // strip covers the whole unit cube
        let b3 = unit_box(3);
        let slab = Slab::new(dir(&[1, 1, 1]), rat_int(3), rat_int(3)).unwrap();
        assert_eq!(strip_volume(&slab, &b3).unwrap(), rat_int(1));
    }

    #[test]
    fn vd_examples() {
        // axis direction: unit (d-1)-cube section
        assert_eq!(vd_of_direction(&dir(&[1, 0, 0])).unwrap(), rat_int(1));
        // the known exact values
        assert_eq!(vd_of_direction(&dir(&[1, 1])).unwrap(), rat_int(2));
        assert_eq!(vd_of_direction(&dir(&[1, 1, 1])).unwrap(), rat(9, 4));
        assert_eq!(vd_of_direction(&dir(&[1, 1, 1, 1])).unwrap(), rat(8, 3));
        // central chord of the square for v=(3,4): exact segment endpoints
        // give chord length 7/5, so V = |v|_1/|v| * chord = 7/5 * 5/4 ... = 7/4
        assert_eq!(vd_of_direction(&dir(&[3, 4])).unwrap(), rat(7, 4));
    }

    #[test]
    fn vd_scale_and_sign_invariant() {
        let a = vd_of_direction(&dir(&[2, -4])).unwrap();
        let b = vd_of_direction(&dir(&[1, 2])).unwrap();
        assert_eq!(a, b);
        let c = vd_of_direction(&dir(&[5, 5, 5])).unwrap();
        assert_eq!(c, rat(9, 4));
    }

    #[test]
    fn total_mass_is_exact() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let d = rng.gen_range(1..=5);
            let coords: Vec<Rat> = (0..d)
                .map(|_| rat(rng.gen_range(1..=9), rng.gen_range(1..=9)))
                .collect();
            let v = Direction::new(coords).unwrap();
            let n = rat_int(rng.gen_range(1..=4));
            let b = BoxSpec::new(d, n.clone()).unwrap();
            let t = v.l1() * &n;
            let vol = halfspace_box_volume(&v, &t, &b).unwrap();
            assert_eq!(vol, pow_rat(&n, d));
        }
    }

    #[test]
    fn derivative_matches_density() {
        // central differences of F converge to the density at rate h^2,
        // sampled away from the breakpoints of the piecewise polynomial
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut checked = 0;
        'outer: for _ in 0..60 {
            let d = rng.gen_range(2..=4);
            let coords: Vec<Rat> = (0..d)
                .map(|_| rat(rng.gen_range(1..=7), rng.gen_range(1..=5)))
                .collect();
            let v = Direction::new(coords).unwrap();
            let b = unit_box(d);
            let l1 = v.l1();
            let t = &l1 * rat(rng.gen_range(1..=15), 16);
            let h = rat(1, 256);
            // skip samples near a breakpoint sum_{i in S} v_i
            for mask in 0..(1u32 << d) {
                let mut s = Rat::zero();
                for i in 0..d {
                    if mask & (1 << i) != 0 {
                        s += &v.coords()[i];
                    }
                }
                if (&s - &t).abs() <= &h + &h {
                    continue 'outer;
                }
            }
            let fp = halfspace_box_volume(&v, &(&t + &h), &b).unwrap();
            let fm = halfspace_box_volume(&v, &(&t - &h), &b).unwrap();
            let diff = (fp - fm) / (&h + &h);
            let density = slice_density(&v, &t, &b).unwrap();
            let e_h = (&diff - &density).abs();
            let h2 = &h / rat_int(2);
            let fp = halfspace_box_volume(&v, &(&t + &h2), &b).unwrap();
            let fm = halfspace_box_volume(&v, &(&t - &h2), &b).unwrap();
            let diff2 = (fp - fm) / (&h2 + &h2);
            let e_h2 = (&diff2 - &density).abs();
            // O(h^2): quartering h's effect, with slack for the h^4 term
            let tiny = rat(1, 1_000_000_000_000i64);
            assert!(
                &e_h2 * rat_int(3) <= e_h.clone() + &tiny,
                "no quadratic decay: e(h)={} e(h/2)={}",
                rat_to_f64(&e_h),
                rat_to_f64(&e_h2)
            );
            checked += 1;
        }
        assert!(checked > 20, "too many samples skipped: {checked}");
    }

    #[test]
    fn slice_symmetry_about_centre() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let d = rng.gen_range(2..=5);
            let coords: Vec<Rat> = (0..d)
                .map(|_| rat(rng.gen_range(0..=6), rng.gen_range(1..=5)))
                .collect();
            let Ok(v) = Direction::new(coords) else {
                continue;
            };
            let n = rat_int(rng.gen_range(1..=3));
            let b = BoxSpec::new(d, n.clone()).unwrap();
            let full = v.l1() * &n;
            let t = &full * rat(rng.gen_range(0..=32), 32);
            let a = slice_density(&v, &t, &b).unwrap();
            let c = slice_density(&v, &(&full - &t), &b).unwrap();
            assert_eq!(a, c);
        }
    }

    #[test]
    fn central_section_is_maximal() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..40 {
            let d = rng.gen_range(2..=4);
            let coords: Vec<Rat> = (0..d)
                .map(|_| rat(rng.gen_range(1..=8), rng.gen_range(1..=5)))
                .collect();
            let v = Direction::new(coords).unwrap();
            let n = rat_int(rng.gen_range(1..=3));
            let b = BoxSpec::new(d, n.clone()).unwrap();
            let params = super::super::central_params(&v, &b).unwrap();
            let central = slice_density(&v, &params.t0, &b).unwrap();
            for k in 0..=16 {
                let t = v.l1() * &n * rat(k, 16);
                let s = slice_density(&v, &t, &b).unwrap();
                assert!(s <= central, "slice at {k}/16 beats the centre");
            }
        }
    }

    #[test]
    fn central_strip_is_maximal() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..30 {
            let d = rng.gen_range(2..=4);
            let coords: Vec<Rat> = (0..d)
                .map(|_| rat(rng.gen_range(1..=8), rng.gen_range(1..=5)))
                .collect();
            let v = Direction::new(coords).unwrap();
            let n = rat_int(rng.gen_range(2..=4));
            let b = BoxSpec::new(d, n.clone()).unwrap();
            let params = super::super::central_params(&v, &b).unwrap();
            let width = v.l1();
            let central = strip_volume(
                &Slab::new(v.clone(), params.t2.clone(), width.clone()).unwrap(),
                &b,
            )
            .unwrap();
            for k in 0..=16 {
                let t = &width * (&n - Rat::one()) * rat(k, 16) + &width;
                let s =
                    strip_volume(&Slab::new(v.clone(), t, width.clone()).unwrap(), &b).unwrap();
                assert!(s <= central, "strip at offset {k}/16 beats the central strip");
            }
        }
    }

    #[test]
    fn vd_all_ones_matches_general_path() {
        for d in 2..=8 {
            let coords = vec![rat_int(1); d];
            let v = Direction::new(coords).unwrap();
            let l1: Rat = rat_int(d as i64);
            let t0 = &l1 / rat_int(2);
            let density = slice_density(&v, &t0, &unit_box(d)).unwrap();
            assert_eq!(vd_all_ones(d).unwrap(), l1 * density, "d={d}");
        }
    }
}
