use std::path::PathBuf;

use hdpc_lp::gf2::{
    builtin_code, hamming_8_4_paper,
    io::{load_code, load_matrix, to_alist_string, to_plain_string},
};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

#[test]
fn example_matrix_files() {
    let h = hamming_8_4_paper().parity_check().clone();
    let plain = data("hamming_8_4_paper.txt");
    let alist = data("hamming_8_4_paper.alist");
    assert_eq!(load_matrix(&plain).unwrap(), h);
    assert_eq!(load_matrix(&alist).unwrap(), h);
    assert_eq!(std::fs::read_to_string(&plain).unwrap(), to_plain_string(&h));
    assert_eq!(std::fs::read_to_string(&alist).unwrap(), to_alist_string(&h));
}

#[test]
fn code_from_file_matches_builtin() {
    let path = data("hamming_8_4_paper.txt");
    let from_file = load_code(path.to_str().unwrap()).unwrap();
    assert_eq!(from_file.name(), "hamming_8_4_paper");
    assert_eq!((from_file.n(), from_file.k()), (8, 4));
    let mut a = from_file.enumerate_codewords().unwrap();
    let mut b = builtin_code("hamming_8_4_paper").unwrap().enumerate_codewords().unwrap();
    a.sort();
    b.sort();
    assert_eq!(a, b);
}
