fn main() {
    std::process::exit(odekit::cli::run());
}
