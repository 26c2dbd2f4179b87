//! Prints the BW16 fixture and its SHA-256 (to stderr).

fn main() {
    let file = olab_core::bw16::generate().expect("construction succeeds");
    let text = olab_core::bw16::to_json(&file);
    eprintln!("sha256 {}", olab_core::bw16::sha256_hex(&text));
    print!("{}", text);
}
