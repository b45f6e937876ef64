fn main() -> std::process::ExitCode {
    numaj::cli::main()
}
