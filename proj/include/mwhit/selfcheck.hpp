#pragma once

#include <string>
#include <vector>

namespace mwhit
{

    struct SelfCheckResult
    {
        std::string name;
        bool pass = false;
        std::string detail;
    };

    struct SelfCheckReport
    {
        std::vector<SelfCheckResult> checks;

        bool all_pass() const
        {
            for (const auto &c : checks)
                if (!c.pass)
                    return false;
            return true;
        }
    };

    /**
     * Runs the library's invariant battery (field arithmetic, cocycle
     * identities, alternator agreement, division round trips, symmetry,
     * support, structure and eigenvalue checks) at desk scale for
     * n = 1..n_max over the given residue cardinalities. Deterministic.
     */
    SelfCheckReport run_selfcheck(int n_max, const std::vector<long> &qs);

    std::string format_text(const SelfCheckReport &report);

} // namespace mwhit
