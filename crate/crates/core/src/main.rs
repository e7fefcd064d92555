fn main() -> std::process::ExitCode {
    factorforge::pipeline::cli::cli_main(std::env::args_os())
}
