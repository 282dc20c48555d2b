//! Deterministic rational samples drawn inside a domain.

use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{Domain, SampleSpec, Value, Q};

/// Draws carrier members for one domain.
///
/// Each coordinate is `p/q` with `1 <= q <= bound`. Designated elements
/// (usually the structure's constants) are mixed in with probability 1/8 so
/// laws that only bite at the constants still get exercised.
#[derive(Clone, Debug)]
pub struct Sampler {
    domain: Domain,
    spec: SampleSpec,
    specials: Vec<Value>,
}

impl Sampler {
    pub fn new(domain: Domain, spec: SampleSpec, specials: Vec<Value>) -> Sampler {
        let specials = specials.into_iter().filter(|v| domain.contains(v)).collect();
        Sampler { domain, spec, specials }
    }

    pub fn spec(&self) -> &SampleSpec {
        &self.spec
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.spec.seed);
        rng.set_stream(stream);
        rng
    }

    /// `count` tuples of the given arity from an independent stream.
    pub fn tuples(&self, stream: u64, arity: usize) -> impl Iterator<Item = Vec<Value>> + '_ {
        let mut rng = self.rng(stream);
        let count = if arity == 0 { 1 } else { self.spec.count };
        (0..count).map(move |_| (0..arity).map(|_| self.draw(&mut rng)).collect())
    }

    pub fn draw(&self, rng: &mut ChaCha8Rng) -> Value {
        if !self.specials.is_empty() && rng.gen_ratio(1, 8) {
            let i = rng.gen_range(0..self.specials.len());
            return self.specials[i].clone();
        }
        let bound = self.spec.bound.max(1) as i64;
        match &self.domain {
            Domain::Interval { lo, hi } => {
                let t = unit(rng, bound);
                Value::Rat(lo + (hi - lo) * t)
            }
            Domain::Dyadic => {
                let k = rng.gen_range(0..=6u32);
                let den = 1i64 << k;
                Value::Rat(ratio(rng.gen_range(0..=den), den))
            }
            Domain::Rationals => Value::Rat(signed(rng, bound)),
            Domain::ProjectiveHalfLine => {
                if rng.gen_ratio(1, 16) {
                    Value::Infinity
                } else {
                    let den = rng.gen_range(1..=bound);
                    Value::Rat(ratio(den, rng.gen_range(1..=den)))
                }
            }
            Domain::Region { .. } => {
                for _ in 0..256 {
                    let x = unit(rng, bound);
                    let y = signed(rng, bound) / Q::from_integer(BigInt::from(4));
                    let v = Value::Pair(x, y);
                    if self.domain.contains(&v) {
                        return v;
                    }
                }
                // the segment y = 0, 0 <= x <= 1 lies in every region
                Value::Pair(unit(rng, bound), Q::from_integer(BigInt::from(0)))
            }
            Domain::Plane => Value::Pair(signed(rng, bound), signed(rng, bound)),
        }
    }
}

fn ratio(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Uniform grid point of `[0, 1]`.
fn unit(rng: &mut ChaCha8Rng, bound: i64) -> Q {
    let den = rng.gen_range(1..=bound);
    ratio(rng.gen_range(0..=den), den)
}

/// Grid point of `[-2, 2]`.
fn signed(rng: &mut ChaCha8Rng, bound: i64) -> Q {
    let den = rng.gen_range(1..=bound);
    ratio(rng.gen_range(-2 * den..=2 * den), den)
}
