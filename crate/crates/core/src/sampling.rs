//! Seeded generators for interval sets, functions, profiles, and measures.
//!
//! All values are drawn from dyadic grids so that every generated object is
//! exact and structural coincidences (shared breakpoints, touching supports)
//! happen often enough to exercise edge cases.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::distributions::{Jump, JumpFunction, MonotonePwFunction};
use crate::interval_sets::{Interval, IntervalSet, Space};
use crate::measures::Dtm;
use crate::pwl_functions::{Direction, MonotoneProfile, PwlFunction};
use crate::scalar::{sort_dedup, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetKind {
    Open,
    Compact,
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Independent sub-sampler, so case `i` of a sweep does not depend on
    /// how many draws earlier cases consumed.
    pub fn fork(&mut self) -> Sampler {
        Sampler::new(self.rng.gen())
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Uniform `k/den` with `lo ≤ k/den ≤ hi` (bounds given in units of `den`).
    pub fn grid<S: Scalar>(&mut self, lo: i64, hi: i64, den: i64) -> S {
        S::ratio(self.rng.gen_range(lo..=hi), den)
    }

    /// Random nonnegative coefficient with a small denominator.
    pub fn coefficient<S: Scalar>(&mut self) -> S {
        S::ratio(self.rng.gen_range(0..=8), *[1, 2, 4].choose(&mut self.rng).unwrap())
    }

    fn distinct_grid<S: Scalar>(&mut self, count: usize, lo: i64, hi: i64, den: i64) -> Vec<S> {
        let mut ks: Vec<i64> = (lo..=hi).collect();
        ks.shuffle(&mut self.rng);
        ks.truncate(count);
        ks.sort();
        ks.into_iter().map(|k| S::ratio(k, den)).collect()
    }

    /// Random function on the space with values in `[ylo, yhi]/4`.
    pub fn pwl_in<S: Scalar>(&mut self, space: &Space<S>, ylo: i64, yhi: i64) -> PwlFunction<S> {
        match space {
            Space::Line => {
                let interior = self.rng.gen_range(1..=5);
                let xs: Vec<S> = self.distinct_grid(interior + 2, -12, 16, 4);
                let last = xs.len() - 1;
                let nodes = xs
                    .into_iter()
                    .enumerate()
                    .map(|(i, x)| {
                        let y = if i == 0 || i == last { S::zero() } else { self.grid(ylo, yhi, 4) };
                        (x, y)
                    })
                    .collect();
                PwlFunction::new(space.clone(), nodes).expect("generated nodes are valid")
            }
            Space::Compact { a, b } => {
                let interior = self.rng.gen_range(0..=4);
                let width = b.clone() - a.clone();
                let mut ts: Vec<S> = self.distinct_grid(interior, 1, 15, 16);
                ts.insert(0, S::zero());
                ts.push(S::one());
                let nodes = ts.into_iter().map(|t| (a.clone() + width.clone() * t, self.grid(ylo, yhi, 4))).collect();
                PwlFunction::new(space.clone(), nodes).expect("generated nodes are valid")
            }
        }
    }

    pub fn pwl<S: Scalar>(&mut self, space: &Space<S>) -> PwlFunction<S> {
        self.pwl_in(space, -8, 8)
    }

    pub fn nonnegative_pwl<S: Scalar>(&mut self, space: &Space<S>) -> PwlFunction<S> {
        self.pwl_in(space, 0, 8)
    }

    pub fn nonpositive_pwl<S: Scalar>(&mut self, space: &Space<S>) -> PwlFunction<S> {
        self.pwl_in(space, -8, 0)
    }

    /// Nonnegative function supported inside `[lo, hi]` (line only).
    pub fn bump_within<S: Scalar>(&mut self, lo: &S, hi: &S, sign: i64) -> PwlFunction<S> {
        let interior = self.rng.gen_range(1..=3);
        let ts: Vec<S> = self.distinct_grid(interior, 1, 15, 16);
        let w = hi.clone() - lo.clone();
        let mut nodes = vec![(lo.clone(), S::zero())];
        for t in ts {
            let y: S = self.grid(1, 8, 4);
            nodes.push((lo.clone() + w.clone() * t, y * S::int(sign)));
        }
        nodes.push((hi.clone(), S::zero()));
        PwlFunction::on_line(nodes).expect("generated nodes are valid")
    }

    /// Random monotone profile on `[lo, hi]`, vanishing at 0 when `anchor` is set
    /// (which requires `lo ≤ 0 ≤ hi`).
    pub fn monotone_profile<S: Scalar>(
        &mut self,
        lo: &S,
        hi: &S,
        direction: Direction,
        anchor: bool,
    ) -> MonotoneProfile<S> {
        let mut xs = vec![lo.clone(), hi.clone()];
        if anchor {
            xs.push(S::zero());
        }
        let w = hi.clone() - lo.clone();
        for _ in 0..self.rng.gen_range(0..=3) {
            let t: S = self.grid(1, 15, 16);
            xs.push(lo.clone() + w.clone() * t);
        }
        sort_dedup(&mut xs);
        if xs.len() < 2 {
            xs = vec![lo.clone(), lo.clone() + S::one()];
        }
        let mut incs: Vec<S> = (1..xs.len()).map(|_| self.grid(0, 8, 4)).collect();
        if direction == Direction::NonIncreasing {
            incs.iter_mut().for_each(|v| *v = -v.clone());
        }
        let mut ys = vec![S::zero()];
        for inc in &incs {
            let next = ys.last().unwrap().clone() + inc.clone();
            ys.push(next);
        }
        if anchor {
            let zero_idx = xs.iter().position(|x| x.is_zero()).expect("0 is a node");
            let offset = ys[zero_idx].clone();
            ys.iter_mut().for_each(|y| *y = y.clone() - offset.clone());
        } else {
            let offset: S = self.grid(-4, 4, 4);
            ys.iter_mut().for_each(|y| *y = y.clone() + offset.clone());
        }
        MonotoneProfile::new(xs.into_iter().zip(ys).collect(), direction).expect("monotone by construction")
    }

    /// Random continuous profile (not necessarily monotone) on `[lo, hi]`.
    pub fn any_profile<S: Scalar>(&mut self, lo: &S, hi: &S, anchor: bool) -> PwlFunction<S> {
        let mut xs = vec![lo.clone(), hi.clone()];
        if anchor {
            xs.push(S::zero());
        }
        let w = hi.clone() - lo.clone();
        for _ in 0..self.rng.gen_range(1..=3) {
            let t: S = self.grid(1, 15, 16);
            xs.push(lo.clone() + w.clone() * t);
        }
        sort_dedup(&mut xs);
        let nodes = xs
            .into_iter()
            .map(|x| {
                let y = if anchor && x.is_zero() { S::zero() } else { self.grid(-8, 8, 4) };
                (x, y)
            })
            .collect();
        PwlFunction::new(Space::compact(lo.clone(), hi.clone()).expect("lo < hi"), nodes)
            .expect("generated nodes are valid")
    }

    /// Points of interest for set generation: the given landmarks, their
    /// neighbours at distance 1/2 and 1, midpoints, and a coarse grid.
    pub fn point_pool<S: Scalar>(&mut self, space: &Space<S>, landmarks: &[S]) -> Vec<S> {
        let mut pool = Vec::new();
        for l in landmarks {
            pool.push(l.clone());
            for d in [S::half(), S::one()] {
                pool.push(l.clone() - d.clone());
                pool.push(l.clone() + d);
            }
        }
        let mut sorted = landmarks.to_vec();
        sort_dedup(&mut sorted);
        for w in sorted.windows(2) {
            pool.push((w[0].clone() + w[1].clone()) / S::two());
        }
        match space {
            Space::Line => pool.extend((-12..=16).map(|k| S::ratio(k, 4))),
            Space::Compact { a, b } => {
                let w = b.clone() - a.clone();
                pool.extend((0..=16).map(|k| a.clone() + w.clone() * S::ratio(k, 16)));
                pool.retain(|x| space.contains(x));
            }
        }
        sort_dedup(&mut pool);
        pool
    }

    /// Random open or compact set of up to three parts with endpoints from `pool`.
    pub fn set<S: Scalar>(&mut self, space: &Space<S>, kind: SetKind, pool: &[S]) -> IntervalSet<S> {
        let parts = self.rng.gen_range(1..=3);
        let mut ends: Vec<S> = pool.choose_multiple(&mut self.rng, 2 * parts).cloned().collect();
        sort_dedup(&mut ends);
        let mut intervals = Vec::new();
        for (i, pair) in ends.chunks(2).enumerate() {
            let (lo, hi) = match pair {
                [lo, hi] => (lo.clone(), hi.clone()),
                [p] => (p.clone(), p.clone()),
                _ => continue,
            };
            let interval = match kind {
                SetKind::Compact => Interval::closed(lo, hi),
                SetKind::Open if lo == hi => continue,
                SetKind::Open => {
                    let unbounded = *space == Space::Line && self.rng.gen_bool(0.1);
                    match (unbounded, i == 0) {
                        (true, true) => Interval::below(hi, true),
                        (true, false) => Interval::above(lo, true),
                        _ => Interval::open(lo, hi),
                    }
                }
            };
            intervals.push(interval);
        }
        let set = IntervalSet::from_parts(intervals);
        // relative topology: an open set of the line meets [a, b] in a relatively open set
        set.intersect(&space.whole())
    }

    /// Random catalog measure on the space, built from landmarks on a grid.
    pub fn measure<S: Scalar>(&mut self, space: &Space<S>) -> Dtm<S> {
        let depth = self.rng.gen_range(1..=3);
        let mut terms = Vec::new();
        for _ in 0..depth {
            let coeff = S::ratio(self.rng.gen_range(1..=6), *[1, 2].choose(&mut self.rng).unwrap());
            terms.push((coeff, self.atom_measure(space)));
        }
        if terms.len() == 1 && self.rng.gen_bool(0.5) {
            return terms.pop().unwrap().1;
        }
        Dtm::combo(space.clone(), terms).expect("terms share the space")
    }

    /// Random measure with no non-additive component.
    pub fn linear_measure<S: Scalar>(&mut self, space: &Space<S>) -> Dtm<S> {
        let depth = self.rng.gen_range(1..=3);
        let mut terms = Vec::new();
        for _ in 0..depth {
            let coeff = S::ratio(self.rng.gen_range(1..=6), 2);
            let (lo, hi) = self.sub_interval(space);
            let m = if self.rng.gen_bool(0.5) {
                Dtm::dirac(space.clone(), lo)
            } else {
                Dtm::lebesgue(space.clone(), lo, hi)
            };
            terms.push((coeff, m.expect("inside the space")));
        }
        Dtm::combo(space.clone(), terms).expect("terms share the space")
    }

    /// Random compact interval `[lo, hi]` (`lo < hi`) inside the space.
    pub fn sub_interval<S: Scalar>(&mut self, space: &Space<S>) -> (S, S) {
        match space {
            Space::Line => {
                let v: Vec<S> = self.distinct_grid(2, -8, 12, 4);
                (v[0].clone(), v[1].clone())
            }
            Space::Compact { a, b } => {
                let v: Vec<S> = self.distinct_grid(2, 0, 16, 16);
                let w = b.clone() - a.clone();
                (a.clone() + w.clone() * v[0].clone(), a.clone() + w * v[1].clone())
            }
        }
    }

    fn atom_measure<S: Scalar>(&mut self, space: &Space<S>) -> Dtm<S> {
        let (lo, hi) = self.sub_interval(space);
        match self.rng.gen_range(0..3) {
            0 => Dtm::simple(space.clone(), lo, hi),
            1 => Dtm::dirac(space.clone(), lo),
            _ => Dtm::lebesgue(space.clone(), lo, hi),
        }
        .expect("inside the space")
    }

    /// Random monotone function with jumps (right- or left-continuous or
    /// neither at each breakpoint) and linear pieces between breakpoints.
    pub fn monotone_jump<S: Scalar>(&mut self, direction: Direction) -> MonotonePwFunction<S> {
        let count = self.rng.gen_range(1..=4);
        let ts: Vec<S> = self.distinct_grid(count, -8, 8, 4);
        let base: S = self.grid(-4, 4, 4);
        let mut current = base.clone();
        let mut jumps = Vec::new();
        for (i, t) in ts.into_iter().enumerate() {
            let left = if i == 0 { current.clone() } else { current.clone() + self.grid::<S>(0, 4, 4) };
            let right = left.clone() + self.grid::<S>(0, 4, 4);
            let value = match self.rng.gen_range(0..3) {
                0 => left.clone(),
                1 => right.clone(),
                _ => (left.clone() + right.clone()) / S::two(),
            };
            current = right.clone();
            jumps.push(Jump { t, left, value, right });
        }
        let mut g = JumpFunction::from_breakpoints(base, jumps).expect("increasing breakpoints");
        if direction == Direction::NonIncreasing {
            g = JumpFunction::linear_combination(&[(-S::one(), &g)], S::zero());
        }
        MonotonePwFunction::new(direction, g).expect("monotone by construction")
    }
}
