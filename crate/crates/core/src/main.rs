fn main() {
    std::process::exit(curvegroup::cli::run());
}
