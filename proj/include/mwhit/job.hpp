#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mwhit/characters.hpp"
#include "mwhit/field.hpp"
#include "mwhit/gaussian_rational.hpp"

namespace mwhit
{

    // Rejected configuration: reported as a structured error object, exit code 1.
    struct JobError : std::runtime_error
    {
        std::string code;
        JobError(std::string c, const std::string &msg) : std::runtime_error(msg), code(std::move(c)) {}
    };

    /**
     * JobConfig: one batch command for the CLI. Invalid combinations are
     * rejected by validate() before any computation; for a fixed config the
     * output bytes are identical across runs and worker counts.
     */
    struct JobConfig
    {
        enum class Command
        {
            hilbert,
            whittaker_table,
            spanning_set,
            classify,
            selfcheck
        };
        enum class Output
        {
            json,
            csv,
            text
        };

        Command command = Command::hilbert;
        long q = 3;
        int n = 1;
        std::vector<GaussRat> alpha;
        GaussRat beta = GaussRat(1);
        EtaChar eta = EtaChar::eta_1;
        Branch branch = Branch::plus;
        SquareClassElement y = SquareClassElement::one();
        long k_max = 3;
        Output output = Output::json;
        int workers = 1;

        SquareClassElement hilbert_a, hilbert_b; // hilbert command operands

        int selfcheck_n_max = 2;
        std::vector<long> selfcheck_q = {3, 5};
    };

    // Exact scalar syntax: "p/q", "i", "-i", "2i", "4i/5", "3+4i", "1/2-1/3i".
    GaussRat parse_gauss_rational(const std::string &s);

    // Square class tokens: 1, u0, pi, piu0.
    SquareClassElement parse_square_class(const std::string &s);
    std::string square_class_token(const SquareClassElement &c);

    std::string output_token(JobConfig::Output o);
    std::string branch_token(Branch b);
    std::string eta_token(EtaChar e);

    void validate(const JobConfig &cfg); // throws JobError

    // Runs the command and returns the full output bytes (deterministic).
    // For the selfcheck command, *invariants_ok reports whether every check
    // passed (exit code 2 territory when false); other commands leave it true.
    std::string run_job(const JobConfig &cfg, bool *invariants_ok = nullptr);

} // namespace mwhit
