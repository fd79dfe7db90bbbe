//! BCH code construction over GF(2^m): cyclotomic cosets, generator
//! polynomials and the resulting parity-check matrices.

use hdpc_lp::gf2::{bch_code, bch_generator_polynomial, builtin_code, cyclotomic_coset, Gf2m, BUILTIN_CODES};
use hdpc_lp::separation::full_fs_count;

fn poly_string(p: &[u8]) -> String {
    let terms: Vec<String> = p
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &b)| b == 1)
        .map(|(i, _)| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    terms.join(" + ")
}

fn main() -> hdpc_lp::Result<()> {
    let field = Gf2m::new(4)?;
    println!("GF(16) over {:#x}: alpha^4 = {:#06b}", field.primitive_poly(), field.alpha_pow(4).value);
    for i in [1, 3, 5, 7] {
        println!("coset of {i} mod 15: {:?}", cyclotomic_coset(i, 15));
    }
    let g = bch_generator_polynomial(&field, 5);
    println!("g(x) for BCH[15,7]: {}", poly_string(&g));

    let code = bch_code(4, 5)?;
    println!("\n{} : n={} k={}\n{}", code.name(), code.n(), code.k(), code.parity_check());

    println!("built-in codes:");
    for name in BUILTIN_CODES {
        let c = builtin_code(name)?;
        println!(
            "  {:<18} n={:<3} k={:<3} rate={:.3} FS inequalities={}",
            name,
            c.n(),
            c.k(),
            c.rate(),
            full_fs_count(c.parity_check())
        );
    }
    Ok(())
}
