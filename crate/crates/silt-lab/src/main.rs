fn main() {
    std::process::exit(silt_lab::run_cli());
}
