use bisc_core::*;
fn main() {
    for (n, m) in [(5usize, 3usize), (6, 4)] {
        let input = alternating(n);
        let basis = bisc(&input, m).unwrap();
        let full = basis.patterns().iter().all(|q| q.is_fully_shaded());
        println!("n={n} m={m}: {} patterns, all fully shaded: {full}", basis.len());
    }
}
