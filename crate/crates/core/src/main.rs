fn main() {
    std::process::exit(speckle_edge::cli::run(std::env::args()));
}
