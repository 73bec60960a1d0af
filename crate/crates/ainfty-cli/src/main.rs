fn main() {
    println!("ainf: placeholder");
}
