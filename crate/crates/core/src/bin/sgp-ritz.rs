fn main() -> std::process::ExitCode {
    sgp_ritz::bench::cli::main()
}
