fn main() {
    std::process::exit(netcert::certifier::run_cli(std::env::args_os()));
}
