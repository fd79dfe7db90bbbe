//! Depth-limited branch and bound over NSA relaxations.

use super::cutting::{nsa_on, LpOptions};
use super::{DecodeObserver, DecodeOutcome, DecodeStats};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, LinearCode};
use crate::lp::{is_near_binary, INTEGRALITY_TOL};

/// Fractional position with the smallest `|c_i|`, lowest index on ties.
fn branching_bit(x: &[f64], c: &[f64]) -> Option<usize> {
    (0..x.len())
        .filter(|&i| !is_near_binary(x[i], INTEGRALITY_TOL))
        .min_by(|&a, &b| c[a].abs().total_cmp(&c[b].abs()).then(a.cmp(&b)))
}

struct Search<'a> {
    h: &'a BitMatrix,
    c: &'a [f64],
    max_depth: usize,
    opts: &'a LpOptions,
    upper_bound: f64,
    incumbent: Option<Vec<f64>>,
    /// A node ended integral but outside the code (iteration limit).
    incomplete: bool,
    stats: DecodeStats,
}

impl Search<'_> {
    /// One node at `depth = fixes.len()`; zero child first.
    fn visit(&mut self, fixes: &mut Vec<(usize, u8)>, obs: &mut dyn DecodeObserver) -> Result<()> {
        if fixes.len() > self.max_depth {
            self.stats.depth_limit_hit = true;
            return Ok(());
        }
        self.stats.bb_nodes += 1;
        let out = match nsa_on(self.h, self.c, fixes, self.opts, obs) {
            Ok(out) => out,
            Err(Error::Infeasible) => {
                self.stats.pruned_infeasible += 1;
                return Ok(());
            }
            Err(e) => return Err(e),
        };
        self.stats.absorb(&out.stats);
        if out.is_integral() {
            let bits = out.bits().expect("integral");
            if self.h.syndrome(&bits)?.contains(&1) {
                self.incomplete = true;
                return Ok(());
            }
            self.stats.pruned_integral += 1;
            if out.objective < self.upper_bound {
                self.upper_bound = out.objective;
                self.incumbent = Some(out.word);
            }
            return Ok(());
        }
        if out.objective >= self.upper_bound {
            self.stats.pruned_bound += 1;
            return Ok(());
        }
        let bit = branching_bit(&out.word, self.c).expect("fractional word has a fractional bit");
        self.children(bit, fixes, obs)
    }

    fn children(&mut self, bit: usize, fixes: &mut Vec<(usize, u8)>, obs: &mut dyn DecodeObserver) -> Result<()> {
        for value in [0u8, 1] {
            fixes.push((bit, value));
            let r = self.visit(fixes, obs);
            fixes.pop();
            r?;
        }
        Ok(())
    }
}

/// Branch and bound with maximal depth `max_depth`.
///
/// The root is a plain NSA run; a fractional root is split on its least
/// reliable fractional bit and the two subtrees are searched depth first.
/// Nodes are pruned by infeasibility, by integrality and by bound. The
/// certificate requires an incumbent and a search that never reached the
/// depth limit.
pub fn decode_bb(
    code: &LinearCode,
    c: &[f64],
    max_depth: usize,
    opts: &LpOptions,
    obs: &mut dyn DecodeObserver,
) -> Result<DecodeOutcome> {
    if c.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            actual: c.len(),
        });
    }
    let h = code.parity_check();
    let root = nsa_on(h, c, &[], opts, obs)?;
    if root.ml_certificate {
        return Ok(root);
    }
    let Some(bit) = branching_bit(&root.word, c) else {
        return Ok(root);
    };
    let mut search = Search {
        h,
        c,
        max_depth,
        opts,
        upper_bound: f64::INFINITY,
        incumbent: None,
        incomplete: false,
        stats: root.stats.clone(),
    };
    search.children(bit, &mut Vec::new(), obs)?;
    let stats = search.stats;
    match search.incumbent {
        Some(word) => {
            let cert = !stats.depth_limit_hit && !search.incomplete;
            Ok(DecodeOutcome::new(word, c, cert, stats))
        }
        None => Ok(DecodeOutcome::new(root.word, c, false, stats)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoders::{decode_ml_bruteforce, decode_nsa, NoObserver};
    use crate::gf2::hamming_8_4_paper;

    const EXAMPLE_R: [f64; 8] = [0.798337, 1.421758, -1.240177, -0.771128, -1.745193, 0.554868, 0.983861, -0.404989];

    #[test]
    fn branching_rule() {
        let c = [0.3, -0.1, 0.1, 2.0];
        assert_eq!(branching_bit(&[0.5, 0.5, 0.5, 0.5], &c), Some(1));
        assert_eq!(branching_bit(&[0.5, 1.0, 0.0, 0.5], &c), Some(0));
        assert_eq!(branching_bit(&[1.0, 1.0, 0.0, 0.0], &c), None);
    }

    #[test]
    fn worked_example_reaches_ml() {
        let code = hamming_8_4_paper();
        let c: Vec<f64> = EXAMPLE_R.iter().map(|r| -r).collect();
        let ml = decode_ml_bruteforce(&code, &c).unwrap();
        let out = decode_bb(&code, &c, 3, &LpOptions::default(), &mut NoObserver).unwrap();
        assert_eq!(out.word, ml.word);
        assert!(out.stats.bb_nodes <= 15);
    }

    #[test]
    fn zero_depth_is_plain_nsa() {
        let code = hamming_8_4_paper();
        let c: Vec<f64> = EXAMPLE_R.iter().map(|r| -r).collect();
        let nsa = decode_nsa(&code, &c, &[], &LpOptions::default(), &mut NoObserver).unwrap();
        let bb = decode_bb(&code, &c, 0, &LpOptions::default(), &mut NoObserver).unwrap();
        assert_eq!(bb.word, nsa.word);
        assert_eq!(bb.ml_certificate, nsa.ml_certificate);
        assert_eq!(bb.stats.bb_nodes, 0);
    }

    #[test]
    fn integral_root_needs_no_branching() {
        let code = hamming_8_4_paper();
        let c = vec![1.0; 8];
        let out = decode_bb(&code, &c, 5, &LpOptions::default(), &mut NoObserver).unwrap();
        assert!(out.ml_certificate);
        assert_eq!(out.stats.bb_nodes, 0);
        assert_eq!(out.word, vec![0.0; 8]);
    }
}
