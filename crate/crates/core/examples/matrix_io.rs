//! Parity-check matrices in plain 0/1 text and alist form.

use hdpc_lp::gf2::io::{load_code, parse_alist, parse_plain, save_plain, to_alist_string, to_plain_string};
use hdpc_lp::gf2::{row_reduce, BitMatrix};

fn main() -> hdpc_lp::Result<()> {
    let h = BitMatrix::from_bit_strings(&["1101000", "0110100", "0011010", "0001101"])?;
    let alist = to_alist_string(&h);
    println!("alist:\n{alist}");
    assert_eq!(parse_alist(&alist)?, h);
    assert_eq!(parse_plain(&to_plain_string(&h))?, h);

    let order: Vec<usize> = (0..h.cols()).rev().collect();
    let (reduced, pivots) = row_reduce(&h, &order);
    println!("reduced on columns 6..0, pivots {pivots:?}:\n{reduced}");

    let path = std::env::temp_dir().join("hdpc_lp_example_h.txt");
    save_plain(&h, &path)?;
    let code = load_code(path.to_str().unwrap())?;
    println!("{} from {}: n={} k={}", code.name(), path.display(), code.n(), code.k());
    std::fs::remove_file(path).ok();
    Ok(())
}
