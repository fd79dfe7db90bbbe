use crate::gf2::{row_reduce, LinearCode};

/// Gauss-Jordan elimination of `H` with pivots tried on the least reliable
/// positions first (smallest `|c_i|`, ties to the lower index). The result
/// spans the same row space with zero rows dropped, so it describes the
/// same code.
pub fn adapt_matrix(code: &LinearCode, c: &[f64]) -> LinearCode {
    let mut order: Vec<usize> = (0..code.n()).collect();
    order.sort_by(|&a, &b| c[a].abs().total_cmp(&c[b].abs()).then(a.cmp(&b)));
    let (reduced, _) = row_reduce(code.parity_check(), &order);
    code.with_parity_check(reduced.without_zero_rows())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{builtin_code, hamming_8_4_paper};

    #[test]
    fn example_vector_pivots() {
        let code = hamming_8_4_paper();
        let r = [0.798337, 1.421758, -1.240177, -0.771128, -1.745193, 0.554868, 0.983861, -0.404989];
        let c: Vec<f64> = r.iter().map(|v| -v).collect();
        let adapted = adapt_matrix(&code, &c);
        let h = adapted.parity_check();
        assert_eq!(h.rows(), 4);
        let mut units: Vec<usize> = (0..8).filter(|&j| h.column(j).iter().sum::<u8>() == 1).collect();
        units.sort();
        assert_eq!(units, vec![0, 3, 5, 7]);
        assert_eq!(adapted.enumerate_codewords().unwrap(), code.enumerate_codewords().unwrap());
    }

    #[test]
    fn equal_magnitudes_pivot_in_index_order() {
        let code = builtin_code("hamming_7_4").unwrap();
        let adapted = adapt_matrix(&code, &[0.5; 7]);
        let h = adapted.parity_check();
        for (r, col) in [0usize, 1, 2].iter().enumerate() {
            let column = h.column(*col);
            assert_eq!(column.iter().sum::<u8>(), 1);
            assert_eq!(column[r], 1);
        }
    }

    #[test]
    fn readaptation_keeps_the_code() {
        let code = builtin_code("bch_15_7").unwrap();
        let c: Vec<f64> = (0..15).map(|i| ((i * 7) % 11) as f64 - 5.3).collect();
        let once = adapt_matrix(&code, &c);
        let twice = adapt_matrix(&once, &c);
        assert_eq!(once.parity_check(), twice.parity_check());
        assert_eq!(twice.enumerate_codewords().unwrap(), code.enumerate_codewords().unwrap());
    }
}
