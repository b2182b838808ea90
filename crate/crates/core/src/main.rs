fn main() {
    // CLI wired up once the library layers land
}
