#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mwhit/job.hpp"

namespace
{

    std::vector<std::string> split_commas(const std::string &s)
    {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ','))
            out.push_back(item);
        return out;
    }

    void print_error(const std::string &code, const std::string &message)
    {
        nlohmann::ordered_json j;
        j["error"] = {{"code", code}, {"message", message}};
        std::cout << j.dump(1) << "\n";
    }

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"exact spherical Whittaker functions on the metaplectic double cover of GSp(2n)"};
    app.require_subcommand(1);

    mwhit::JobConfig cfg;
    std::string alpha_arg, beta_arg = "1", eta_arg = "1", branch_arg = "plus";
    std::string y_arg = "1", output_arg = "json", a_arg, b_arg, q_list_arg = "3,5";

    auto add_common = [&](CLI::App *cmd, bool needs_data) {
        cmd->add_option("--q", cfg.q, "residue field cardinality (odd prime power)");
        cmd->add_option("--output", output_arg, "output format: json, csv or text");
        cmd->add_option("--workers", cfg.workers, "worker threads for batch evaluation");
        if (needs_data)
        {
            cmd->add_option("--n", cfg.n, "rank n");
            cmd->add_option("--alpha", alpha_arg, "comma-separated exact scalars, e.g. 'i,-i'");
            cmd->add_option("--beta", beta_arg, "exact scalar");
            cmd->add_option("--eta", eta_arg, "compact splitting character: 1 or pi");
            cmd->add_option("--branch", branch_arg, "extension branch: plus or minus");
            cmd->add_option("--k-max", cfg.k_max, "largest order-vector sum in grids");
        }
    };

    auto *hil = app.add_subcommand("hilbert", "tame quadratic Hilbert symbol on square classes");
    hil->add_option("a", a_arg, "first square class: 1, u0, pi or piu0")->required();
    hil->add_option("b", b_arg, "second square class")->required();
    add_common(hil, false);

    auto *tab = app.add_subcommand("whittaker-table",
                                   "spherical Whittaker values over a dominant order grid");
    add_common(tab, true);
    tab->add_option("--y", y_arg, "Whittaker character class: 1, u0, pi or piu0");

    auto *span = app.add_subcommand("spanning-set",
                                    "the four symmetric k-functions, their table and rank");
    add_common(span, true);

    auto *cls = app.add_subcommand("classify",
                                   "R(omega), reducibility and intertwining eigenvalues");
    add_common(cls, true);

    auto *self = app.add_subcommand("selfcheck", "run the library invariant battery");
    self->add_option("--n-max", cfg.selfcheck_n_max, "largest rank exercised");
    self->add_option("--q-list", q_list_arg, "comma-separated odd prime powers");
    self->add_option("--output", output_arg, "output format: json, csv or text");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (output_arg == "json")
            cfg.output = mwhit::JobConfig::Output::json;
        else if (output_arg == "csv")
            cfg.output = mwhit::JobConfig::Output::csv;
        else if (output_arg == "text")
            cfg.output = mwhit::JobConfig::Output::text;
        else
            throw mwhit::JobError("bad-output", "unknown output format '" + output_arg + "'");

        if (hil->parsed())
        {
            cfg.command = mwhit::JobConfig::Command::hilbert;
            cfg.hilbert_a = mwhit::parse_square_class(a_arg);
            cfg.hilbert_b = mwhit::parse_square_class(b_arg);
        }
        else if (tab->parsed())
        {
            cfg.command = mwhit::JobConfig::Command::whittaker_table;
            cfg.y = mwhit::parse_square_class(y_arg);
        }
        else if (span->parsed() || cls->parsed())
        {
            cfg.command = span->parsed() ? mwhit::JobConfig::Command::spanning_set
                                         : mwhit::JobConfig::Command::classify;
        }
        else if (self->parsed())
        {
            cfg.command = mwhit::JobConfig::Command::selfcheck;
            cfg.selfcheck_q.clear();
            for (const auto &tok : split_commas(q_list_arg))
                cfg.selfcheck_q.push_back(std::stol(tok));
        }

        if (span->parsed() || cls->parsed())
        {
            if (alpha_arg.empty())
                throw mwhit::JobError("bad-alpha", "--alpha is required");
            cfg.alpha.clear();
            for (const auto &tok : split_commas(alpha_arg))
                cfg.alpha.push_back(mwhit::parse_gauss_rational(tok));
            cfg.beta = mwhit::parse_gauss_rational(beta_arg);
            if (eta_arg == "1")
                cfg.eta = mwhit::EtaChar::eta_1;
            else if (eta_arg == "pi")
                cfg.eta = mwhit::EtaChar::eta_pi;
            else
                throw mwhit::JobError("bad-eta", "eta must be 1 or pi");
            if (branch_arg == "plus")
                cfg.branch = mwhit::Branch::plus;
            else if (branch_arg == "minus")
                cfg.branch = mwhit::Branch::minus;
            else
                throw mwhit::JobError("bad-branch", "branch must be plus or minus");
        }

        bool invariants_ok = true;
        const std::string out = mwhit::run_job(cfg, &invariants_ok);
        std::cout << out;
        return invariants_ok ? 0 : 2;
    }
    catch (const mwhit::JobError &e)
    {
        print_error(e.code, e.what());
        return 1;
    }
    catch (const std::invalid_argument &e)
    {
        print_error("bad-config", e.what());
        return 1;
    }
    catch (const std::exception &e)
    {
        print_error("internal-invariant", e.what());
        return 2;
    }
}
