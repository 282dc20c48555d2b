//! Extensional equality of structures: tables cell by cell on finite
//! carriers, sampled tuples otherwise.

use crate::axioms::Sampler;
use crate::model::{Carrier, ModelError, SampleSpec, Structure, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Difference {
    pub witness: Vec<String>,
    pub note: String,
}

fn same_kind(a: &Structure, b: &Structure) -> bool {
    use Structure::*;
    matches!(
        (a, b),
        (Mobi(_), Mobi(_)) | (Ring(_), Ring(_)) | (Imm(_) | ImmStar(_), Imm(_) | ImmStar(_))
    )
}

/// First observed disagreement between `left` and `right`, ignoring names.
pub fn first_difference(
    left: &Structure,
    right: &Structure,
    sample: Option<&SampleSpec>,
) -> Result<Option<Difference>, ModelError> {
    let differ = |note: String| Ok(Some(Difference { witness: Vec::new(), note }));
    if !same_kind(left, right) {
        return differ(format!("kinds differ: {} vs {}", left.kind().name(), right.kind().name()));
    }
    let carrier = left.carrier();
    if carrier != right.carrier() {
        return differ("carriers differ".into());
    }
    for ((role, a), (_, b)) in left.constants().iter().zip(right.constants().iter()) {
        if a != b {
            return differ(format!(
                "constant {role}: {} vs {}",
                carrier.render(a),
                carrier.render(b)
            ));
        }
    }
    for (stream, ((name, op_l), (_, op_r))) in left.ops().into_iter().zip(right.ops()).enumerate() {
        if let (Some(tl), Some(tr)) = (op_l.table(), op_r.table()) {
            if let Some(cell) = tl.cells().iter().zip(tr.cells()).position(|(x, y)| x != y) {
                let n = tl.size();
                let mut args = vec![0usize; tl.arity()];
                let mut rest = cell;
                for slot in args.iter_mut().rev() {
                    *slot = rest % n;
                    rest /= n;
                }
                let labels = carrier.labels().expect("tables live on finite carriers");
                return Ok(Some(Difference {
                    witness: args.iter().map(|&i| labels[i].clone()).collect(),
                    note: format!(
                        "{name}: {} vs {}",
                        labels[tl.cells()[cell] as usize],
                        labels[tr.cells()[cell] as usize]
                    ),
                }));
            }
            continue;
        }
        let tuples: Box<dyn Iterator<Item = Vec<Value>>> = match carrier {
            Carrier::Finite(labels) => {
                let n = labels.len();
                let arity = op_l.arity();
                let total = n.pow(arity as u32);
                Box::new((0..total).map(move |mut t| {
                    let mut args = vec![Value::Label(0); arity];
                    for slot in args.iter_mut().rev() {
                        *slot = Value::Label(t % n);
                        t /= n;
                    }
                    args
                }))
            }
            Carrier::Rational { domain, sampling } => {
                let spec = sample.or(sampling.as_ref()).cloned().unwrap_or_default();
                let specials = left.constants().into_iter().map(|(_, v)| v.clone()).collect();
                let sampler = Sampler::new(domain.clone(), spec, specials);
                Box::new(sampler.tuples(stream as u64, op_l.arity()).collect::<Vec<_>>().into_iter())
            }
        };
        for args in tuples {
            let l = op_l.apply(name, carrier, &args);
            let r = op_r.apply(name, carrier, &args);
            let same = match (&l, &r) {
                (Ok(x), Ok(y)) => x == y,
                _ => false,
            };
            if !same {
                let show = |v: &Result<Value, ModelError>| match v {
                    Ok(v) => carrier.render(v),
                    Err(e) => format!("error ({e})"),
                };
                return Ok(Some(Difference {
                    witness: args.iter().map(|v| carrier.render(v)).collect(),
                    note: format!("{name}: {} vs {}", show(&l), show(&r)),
                }));
            }
        }
    }
    Ok(None)
}

pub fn structures_equal(
    left: &Structure,
    right: &Structure,
    sample: Option<&SampleSpec>,
) -> Result<bool, ModelError> {
    Ok(first_difference(left, right, sample)?.is_none())
}
