use rand::Rng;

use crate::error::{Error, Result};

/// A per-step decision rule over the finite state set.
///
/// `Deterministic` stores an action table indexed `[h][x]`; `Uniform` plays
/// every action with equal probability. Both expose action probabilities so
/// exact policy evaluation and occupancy computations treat them uniformly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Policy {
    /// `table[h][x]` is the action taken at step `h` in state `x`.
    Deterministic(Vec<Vec<usize>>),
    /// Uniform distribution over actions everywhere.
    Uniform,
}

impl Policy {
    /// Action probabilities at `(h, x)` over `n_actions` actions.
    ///
    /// # Errors
    ///
    /// [`Error::PolicyUndefined`] if a deterministic table does not cover
    /// `(h, x)` or names an out-of-range action.
    pub fn probs(&self, h: usize, x: usize, n_actions: usize) -> Result<Vec<f64>> {
        match self {
            Self::Uniform => Ok(vec![1.0 / n_actions as f64; n_actions]),
            Self::Deterministic(_) => {
                let a = self.action_at(h, x, n_actions)?;
                let mut p = vec![0.0; n_actions];
                p[a] = 1.0;
                Ok(p)
            }
        }
    }

    /// The action a deterministic policy takes at `(h, x)`.
    ///
    /// # Errors
    ///
    /// [`Error::PolicyUndefined`] for uniform policies or uncovered pairs.
    pub fn action_at(&self, h: usize, x: usize, n_actions: usize) -> Result<usize> {
        match self {
            Self::Uniform => Err(Error::PolicyUndefined { h, x }),
            Self::Deterministic(table) => {
                let a = *table
                    .get(h)
                    .and_then(|row| row.get(x))
                    .ok_or(Error::PolicyUndefined { h, x })?;
                if a >= n_actions {
                    return Err(Error::PolicyUndefined { h, x });
                }
                Ok(a)
            }
        }
    }

    /// Sample an action at `(h, x)`. Deterministic policies do not consume
    /// randomness, so their trajectories are independent of the generator.
    pub fn sample(&self, h: usize, x: usize, n_actions: usize, rng: &mut impl Rng) -> Result<usize> {
        match self {
            Self::Uniform => Ok(rng.gen_range(0..n_actions)),
            Self::Deterministic(_) => self.action_at(h, x, n_actions),
        }
    }

    /// Whether this policy is a deterministic table.
    pub fn is_deterministic(&self) -> bool {
        matches!(self, Self::Deterministic(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn deterministic_probs_are_one_hot() {
        let p = Policy::Deterministic(vec![vec![1, 0]]);
        assert_eq!(p.probs(0, 0, 3).unwrap(), vec![0.0, 1.0, 0.0]);
        assert_eq!(p.action_at(0, 1, 3).unwrap(), 0);
    }

    #[test]
    fn uniform_probs_split_mass() {
        let p = Policy::Uniform;
        assert_eq!(p.probs(5, 2, 4).unwrap(), vec![0.25; 4]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = p.sample(0, 0, 4, &mut rng).unwrap();
        assert!(a < 4);
    }

    #[test]
    fn uncovered_pairs_are_reported() {
        let p = Policy::Deterministic(vec![vec![0]]);
        assert!(matches!(p.probs(1, 0, 2), Err(Error::PolicyUndefined { h: 1, x: 0 })));
        assert!(matches!(p.probs(0, 1, 2), Err(Error::PolicyUndefined { h: 0, x: 1 })));
        let oob = Policy::Deterministic(vec![vec![9]]);
        assert!(matches!(oob.action_at(0, 0, 2), Err(Error::PolicyUndefined { .. })));
    }
}
