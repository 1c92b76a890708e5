use crate::polyring::{Field, Poly, PolyRing};

/// What a witness step refers to: an input generator or an earlier step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessRef {
    Generator(usize),
    Step(usize),
}

/// `result = Σ multiplier · element`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessStep<C> {
    pub terms: Vec<(Poly<C>, WitnessRef)>,
    pub result: Poly<C>,
}

/// A replayable derivation of ideal elements from labelled generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<C> {
    pub generators: Vec<(String, Poly<C>)>,
    pub steps: Vec<WitnessStep<C>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("witness step {0} does not evaluate to its stated result")]
    Mismatch(usize),
    #[error("witness step {0} refers forward or out of range")]
    BadReference(usize),
    #[error("witness has no steps")]
    Empty,
}

impl<C: Field> Witness<C> {
    /// Recomputes every step and returns the last result.
    pub fn replay(&self) -> Result<Poly<C>, WitnessError> {
        let mut values: Vec<Poly<C>> = Vec::with_capacity(self.steps.len());
        for (k, step) in self.steps.iter().enumerate() {
            let mut acc: Option<Poly<C>> = None;
            for (mult, r) in &step.terms {
                let base = match *r {
                    WitnessRef::Generator(g) => {
                        &self.generators.get(g).ok_or(WitnessError::BadReference(k))?.1
                    }
                    WitnessRef::Step(s) if s < k => &values[s],
                    WitnessRef::Step(_) => return Err(WitnessError::BadReference(k)),
                };
                let term = mult * base;
                acc = Some(match acc {
                    None => term,
                    Some(a) => &a + &term,
                });
            }
            let value = acc.unwrap_or_else(|| step.result.map_coeffs(|_| C::zero()));
            if value != step.result {
                return Err(WitnessError::Mismatch(k));
            }
            values.push(value);
        }
        values.pop().ok_or(WitnessError::Empty)
    }

    /// Whether the witness replays to exactly 1.
    pub fn proves_unit(&self) -> bool {
        self.replay().is_ok_and(|p| p.is_one())
    }

    pub fn render(&self, ring: &PolyRing) -> Vec<String> {
        let mut out = Vec::new();
        for (label, g) in &self.generators {
            out.push(format!("{label} = {}", ring.render(g)));
        }
        for (k, step) in self.steps.iter().enumerate() {
            let rhs: Vec<String> = step
                .terms
                .iter()
                .map(|(m, r)| {
                    let name = match *r {
                        WitnessRef::Generator(g) => self.generators[g].0.clone(),
                        WitnessRef::Step(s) => format!("step {}", s + 1),
                    };
                    if m.is_one() {
                        format!("[{name}]")
                    } else {
                        format!("({})*[{name}]", ring.render(m))
                    }
                })
                .collect();
            out.push(format!(
                "step {}: {} = {}",
                k + 1,
                ring.render(&step.result),
                rhs.join(" + ")
            ));
        }
        out
    }
}
