fn main() {
    println!("curvecomplex");
}
