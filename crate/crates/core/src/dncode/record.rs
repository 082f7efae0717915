use serde::{Deserialize, Serialize};

use super::{DNCode, RingElement};
use crate::galois::FieldSpec;
use crate::{Budget, Error, Result};

/// Serializable description of a DN code. `a` holds canonical element indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub q: u64,
    pub n: usize,
    pub a: Vec<u64>,
    pub self_dual: bool,
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_enum: Option<Vec<u64>>,
}

impl CodeRecord {
    /// Record with `d` and (optionally) the weight enumerator filled in.
    pub fn from_code(code: &DNCode, with_weights: bool, budget: Budget) -> Result<Self> {
        let weight_enum = if with_weights {
            Some(code.weight_enumerator(budget)?)
        } else {
            None
        };
        let d = match &weight_enum {
            Some(w) => w.iter().skip(1).position(|&c| c > 0).map(|i| i + 1),
            None => Some(code.min_distance(None, budget)?.d),
        };
        Ok(CodeRecord {
            q: code.spec().order(),
            n: code.n(),
            a: code.a().indices(),
            self_dual: code.is_self_dual(),
            d,
            weight_enum,
        })
    }

    pub fn rebuild(&self) -> Result<DNCode> {
        let spec = FieldSpec::with_order(self.q)?;
        if self.a.len() != self.n {
            return Err(Error::Length {
                expected: self.n,
                got: self.a.len(),
            });
        }
        Ok(DNCode::new(RingElement::from_indices(
            &spec, self.n, &self.a,
        )?))
    }

    /// Recomputes every stored field from `a` and reports the first mismatch.
    pub fn revalidate(&self, budget: Budget) -> Result<()> {
        let code = self.rebuild()?;
        let mut fresh = CodeRecord::from_code(&code, self.weight_enum.is_some(), budget)?;
        if self.d.is_none() {
            fresh.d = None;
        }
        if fresh != *self {
            return Err(Error::Parse(format!(
                "record does not match recomputation: stored {self:?}, recomputed {fresh:?}"
            )));
        }
        Ok(())
    }
}
