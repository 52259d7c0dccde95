use std::sync::Arc;

use rayon::prelude::*;

use super::enumerate::{enumerate_models, EnumerationBounds};
use crate::checker::{CheckContext, Evaluator};
use crate::complex::{Face, SimplicialModel};
use crate::dynamics::Registry;
use crate::error::Result;
use crate::formula::Formula;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    ValidUpToBound { models_checked: usize },
    Counterexample {
        model: SimplicialModel,
        face: Face,
        /// Position of `model` in the enumeration.
        index: usize,
    },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::ValidUpToBound { .. })
    }
}

/// First face of `m` (in face order) where `f` fails.
pub fn first_failure(m: &Arc<SimplicialModel>, reg: &Arc<Registry>, f: &Formula) -> Result<Option<usize>> {
    let mut ev = Evaluator::new(m.clone(), reg.clone());
    Ok(ev.eval(f)?.iter().position(|b| !b))
}

/// Searches `models` in order; the reported counterexample is the first in
/// enumeration order even though models are checked in parallel.
pub fn check_validity_in(models: &[SimplicialModel], reg: &Registry, f: &Formula) -> Result<Verdict> {
    reg.check_refs(f)?;
    let reg = Arc::new(reg.clone());
    let hit = models
        .par_iter()
        .enumerate()
        .map(|(i, m)| {
            let m = Arc::new(m.clone());
            first_failure(&m, &reg, f).map(|r| r.map(|face| (i, face)))
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            Ok(Some(hit)) => Some(Ok(hit)),
            Err(e) => Some(Err(e)),
        });
    match hit {
        None => Ok(Verdict::ValidUpToBound {
            models_checked: models.len(),
        }),
        Some(Err(e)) => Err(e),
        Some(Ok((index, face))) => {
            let model = models[index].clone();
            let face = model.faces()[face].clone();
            let ctx = CheckContext::from_shared(Arc::new(model.clone()), reg);
            assert!(
                !ctx.satisfies(&face, f)?,
                "counterexample failed re-verification"
            );
            Ok(Verdict::Counterexample { model, face, index })
        }
    }
}

pub fn check_validity(f: &Formula, bounds: &EnumerationBounds, reg: &Registry) -> Result<Verdict> {
    let models = enumerate_models(bounds)?;
    check_validity_in(&models, reg, f)
}
