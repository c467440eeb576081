fn main() {
    // placeholder, replaced by the harness implementation
}
