fn main() {
    eprintln!("cli pending");
}
