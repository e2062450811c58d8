#include "mwhit/job.hpp"

#include <cctype>
#include <future>
#include <sstream>

#include <json.hpp>

#include "mwhit/selfcheck.hpp"
#include "mwhit/whittaker.hpp"

namespace mwhit
{

    namespace
    {
        using ordered_json = nlohmann::ordered_json;

        mpq_class parse_rational_part(const std::string &s, std::size_t &pos, bool allow_sign)
        {
            std::size_t start = pos;
            if (pos < s.size() && (s[pos] == '+' || s[pos] == '-'))
            {
                if (!allow_sign)
                    throw JobError("bad-scalar", "unexpected sign in '" + s + "'");
                ++pos;
            }
            std::size_t digits = 0;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            {
                ++pos;
                ++digits;
            }
            if (digits == 0)
                throw JobError("bad-scalar", "expected digits in '" + s + "'");
            if (pos < s.size() && s[pos] == '/')
            {
                ++pos;
                std::size_t den_digits = 0;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                {
                    ++pos;
                    ++den_digits;
                }
                if (den_digits == 0)
                    throw JobError("bad-scalar", "expected denominator digits in '" + s + "'");
            }
            mpq_class r(s.substr(start, pos - start));
            if (r.get_den() == 0)
                throw JobError("bad-scalar", "zero denominator in '" + s + "'");
            r.canonicalize();
            return r;
        }
    } // namespace

    GaussRat parse_gauss_rational(const std::string &s)
    {
        if (s.empty())
            throw JobError("bad-scalar", "empty scalar");
        GaussRat total;
        std::size_t pos = 0;
        bool first = true;
        while (pos < s.size())
        {
            int sign = 1;
            if (s[pos] == '+' || s[pos] == '-')
            {
                sign = (s[pos] == '-') ? -1 : 1;
                ++pos;
            }
            else if (!first)
            {
                throw JobError("bad-scalar", "expected '+' or '-' in '" + s + "'");
            }
            mpq_class coeff;
            bool imaginary = false;
            if (pos < s.size() && s[pos] == 'i')
            {
                coeff = 1;
                imaginary = true;
                ++pos;
            }
            else
            {
                coeff = parse_rational_part(s, pos, /*allow_sign=*/false);
                if (pos < s.size() && s[pos] == 'i')
                {
                    imaginary = true;
                    ++pos;
                }
            }
            // the "4i/5" form: a denominator directly after i
            if (imaginary && pos < s.size() && s[pos] == '/')
            {
                ++pos;
                std::size_t den_start = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                    ++pos;
                if (pos == den_start)
                    throw JobError("bad-scalar", "expected denominator digits in '" + s + "'");
                mpq_class den(s.substr(den_start, pos - den_start));
                if (den == 0)
                    throw JobError("bad-scalar", "zero denominator in '" + s + "'");
                coeff /= den;
            }
            if (sign < 0)
                coeff = -coeff;
            if (imaginary)
                total = total + GaussRat(mpq_class(0), coeff);
            else
                total = total + GaussRat(coeff);
            first = false;
        }
        return total;
    }

    SquareClassElement parse_square_class(const std::string &s)
    {
        if (s == "1")
            return SquareClassElement::one();
        if (s == "u0")
            return SquareClassElement::u_0();
        if (s == "pi")
            return SquareClassElement::pi();
        if (s == "piu0")
            return SquareClassElement::pi_u0();
        throw JobError("bad-square-class",
                       "unknown square class '" + s + "' (expected 1, u0, pi or piu0)");
    }

    std::string square_class_token(const SquareClassElement &c)
    {
        const bool odd = c.ord % 2 != 0;
        if (c.unit == UnitClass::trivial)
            return odd ? "pi" : "1";
        return odd ? "piu0" : "u0";
    }

    std::string output_token(JobConfig::Output o)
    {
        switch (o)
        {
        case JobConfig::Output::json:
            return "json";
        case JobConfig::Output::csv:
            return "csv";
        case JobConfig::Output::text:
            return "text";
        }
        return "?";
    }

    std::string branch_token(Branch b) { return b == Branch::plus ? "plus" : "minus"; }
    std::string eta_token(EtaChar e) { return e == EtaChar::eta_1 ? "1" : "pi"; }

    void validate(const JobConfig &cfg)
    {
        if (cfg.q < 3 || cfg.q % 2 == 0)
            throw JobError("bad-q", "q must be an odd prime power >= 3");
        try
        {
            FieldConfig probe(cfg.q);
        }
        catch (const std::invalid_argument &e)
        {
            throw JobError("bad-q", e.what());
        }
        if (cfg.workers < 1 || cfg.workers > 64)
            throw JobError("bad-workers", "workers must be between 1 and 64");
        switch (cfg.command)
        {
        case JobConfig::Command::hilbert:
            return;
        case JobConfig::Command::whittaker_table:
            if (cfg.n < 1 || cfg.n > 6)
                throw JobError("bad-n", "n must be between 1 and 6");
            if (cfg.y.ord != 0 && cfg.y.ord != 1)
                throw JobError("bad-y", "y must be a class of valuation 0 or 1");
            if (cfg.k_max < 0 || cfg.k_max > 30)
                throw JobError("bad-k-max", "k-max must be between 0 and 30");
            return;
        case JobConfig::Command::spanning_set:
        case JobConfig::Command::classify:
            if (cfg.n < 1 || cfg.n > 6)
                throw JobError("bad-n", "n must be between 1 and 6");
            if (static_cast<int>(cfg.alpha.size()) != cfg.n)
                throw JobError("bad-alpha", "alpha must list exactly n scalars");
            for (const auto &x : cfg.alpha)
                if (x.is_zero())
                    throw JobError("bad-alpha", "alpha entries must be non-zero");
            if (cfg.beta.is_zero())
                throw JobError("bad-beta", "beta must be non-zero");
            if (cfg.k_max < 0 || cfg.k_max > 30)
                throw JobError("bad-k-max", "k-max must be between 0 and 30");
            return;
        case JobConfig::Command::selfcheck:
            if (cfg.selfcheck_n_max < 1 || cfg.selfcheck_n_max > 4)
                throw JobError("bad-n", "selfcheck n-max must be between 1 and 4");
            if (cfg.selfcheck_q.empty())
                throw JobError("bad-q", "selfcheck q list must not be empty");
            for (long q : cfg.selfcheck_q)
            {
                try
                {
                    FieldConfig probe_q(q);
                }
                catch (const std::invalid_argument &e)
                {
                    throw JobError("bad-q", e.what());
                }
            }
            return;
        }
    }

    namespace
    {

        std::string render_hilbert(const JobConfig &cfg)
        {
            const FieldConfig field(cfg.q);
            const int value = hilbert(cfg.hilbert_a, cfg.hilbert_b, field);
            switch (cfg.output)
            {
            case JobConfig::Output::json:
            {
                ordered_json j;
                j["config"] = {{"command", "hilbert"},
                               {"q", cfg.q},
                               {"a", square_class_token(cfg.hilbert_a)},
                               {"b", square_class_token(cfg.hilbert_b)}};
                j["results"] = {{"value", value}};
                j["provenance"] = {{"formula", "tame-symbol"}};
                return j.dump(1) + "\n";
            }
            case JobConfig::Output::csv:
            {
                std::ostringstream os;
                os << "a,b,q,value\n"
                   << square_class_token(cfg.hilbert_a) << "," << square_class_token(cfg.hilbert_b)
                   << "," << cfg.q << "," << value << "\n";
                return os.str();
            }
            case JobConfig::Output::text:
            {
                std::ostringstream os;
                os << "(" << square_class_token(cfg.hilbert_a) << ", "
                   << square_class_token(cfg.hilbert_b) << ")_F = " << value
                   << "   [q = " << cfg.q << "]\n";
                return os.str();
            }
            }
            return {};
        }

        struct TableRow
        {
            std::vector<long> k;
            std::string phase;
            long v_power = 0;
            std::string body;
        };

        std::vector<TableRow> whittaker_rows(const JobConfig &cfg)
        {
            const FieldConfig field(cfg.q);
            const auto grid = dominant_orders(cfg.n, cfg.k_max);
            std::vector<TableRow> rows(grid.size());
            auto fill = [&](std::size_t lo, std::size_t hi) {
                for (std::size_t i = lo; i < hi; ++i)
                {
                    const WhittakerValue w = sp_whittaker(cfg.n, cfg.y, TorusOrders(grid[i]), field);
                    rows[i] = TableRow{grid[i], w.phase.to_string(), w.v_power,
                                       w.body.to_canonical_string()};
                }
            };
            if (cfg.workers <= 1 || grid.size() < 2)
            {
                fill(0, grid.size());
            }
            else
            {
                const std::size_t per = (grid.size() + cfg.workers - 1) / cfg.workers;
                std::vector<std::future<void>> parts;
                for (std::size_t lo = 0; lo < grid.size(); lo += per)
                    parts.push_back(std::async(std::launch::async, fill, lo,
                                               std::min(lo + per, grid.size())));
                for (auto &f : parts)
                    f.get();
            }
            return rows;
        }

        std::string render_whittaker_table(const JobConfig &cfg)
        {
            const auto rows = whittaker_rows(cfg);
            const std::string formula = (cfg.y.ord == 0) ? "unit-orbit" : "pi-orbit";
            switch (cfg.output)
            {
            case JobConfig::Output::json:
            {
                ordered_json j;
                j["config"] = {{"command", "whittaker-table"}, {"q", cfg.q},     {"n", cfg.n},
                               {"y", square_class_token(cfg.y)}, {"k_max", cfg.k_max}};
                ordered_json rws = ordered_json::array();
                for (const auto &r : rows)
                    rws.push_back({{"k", r.k}, {"phase", r.phase}, {"v_power", r.v_power},
                                   {"body", r.body}});
                j["results"] = {{"rows", rws}};
                j["provenance"] = {{"formula", formula}};
                return j.dump(1) + "\n";
            }
            case JobConfig::Output::csv:
            {
                std::ostringstream os;
                os << "k,phase,v_power,body\n";
                for (const auto &r : rows)
                {
                    for (std::size_t i = 0; i < r.k.size(); ++i)
                        os << (i ? " " : "") << r.k[i];
                    os << "," << r.phase << "," << r.v_power << "," << r.body << "\n";
                }
                return os.str();
            }
            case JobConfig::Output::text:
            {
                std::ostringstream os;
                os << "spherical Whittaker values, n = " << cfg.n << ", q = " << cfg.q
                   << ", y = " << square_class_token(cfg.y) << " (" << formula << ")\n";
                for (const auto &r : rows)
                {
                    os << "k = (";
                    for (std::size_t i = 0; i < r.k.size(); ++i)
                        os << (i ? "," : "") << r.k[i];
                    os << "): " << r.phase << " * v^" << r.v_power << " * [" << r.body << "]\n";
                }
                return os.str();
            }
            }
            return {};
        }

        struct ProbeDescriptor
        {
            int m;
            long l;
            SquareClassElement u;
            std::vector<long> k;
            CoverTorusElement h;
        };

        std::vector<ProbeDescriptor> described_probes(int n, long k_max, const FieldConfig &field)
        {
            std::vector<ProbeDescriptor> probes;
            for (int m = 0; m <= 1; ++m)
                for (long l = 0; l <= 1; ++l)
                    for (int uu = 0; uu <= 1; ++uu)
                        for (const auto &k : dominant_orders(n, k_max))
                        {
                            HNormalForm nf;
                            nf.m = m;
                            nf.b = SquareClassElement(l, UnitClass::trivial);
                            for (long ki : k)
                                nf.t.push_back(SquareClassElement(ki, UnitClass::trivial));
                            nf.u = SquareClassElement(0, uu ? UnitClass::u0 : UnitClass::trivial);
                            nf.eps = 1;
                            probes.push_back(ProbeDescriptor{m, l, nf.u, k, recompose(nf, field)});
                        }
            return probes;
        }

        ordered_json label_json(const ExtensionLabel &lab)
        {
            ordered_json a = ordered_json::array();
            for (const auto &x : lab.alpha)
                a.push_back(x.to_string());
            return {{"alpha", a}, {"beta", lab.beta.to_string()}, {"branch", branch_token(lab.branch)}};
        }

        std::string render_spanning_set(const JobConfig &cfg)
        {
            const FieldConfig field(cfg.q);
            const UnramifiedData d(cfg.n, cfg.alpha, cfg.beta, cfg.branch, cfg.eta);
            const SpanningSet s = spanning_set(d);
            const auto probes = described_probes(cfg.n, cfg.k_max, field);

            std::vector<std::array<std::string, 4>> cells(probes.size());
            std::vector<CoverTorusElement> hs;
            hs.reserve(probes.size());
            for (const auto &p : probes)
                hs.push_back(p.h);
            auto fill = [&](std::size_t lo, std::size_t hi) {
                for (std::size_t i = lo; i < hi; ++i)
                    for (int f = 0; f < 4; ++f)
                        cells[i][f] = s.eval(f, probes[i].h, field).to_string();
            };
            if (cfg.workers <= 1 || probes.size() < 2)
            {
                fill(0, probes.size());
            }
            else
            {
                const std::size_t per = (probes.size() + cfg.workers - 1) / cfg.workers;
                std::vector<std::future<void>> parts;
                for (std::size_t lo = 0; lo < probes.size(); lo += per)
                    parts.push_back(std::async(std::launch::async, fill, lo,
                                               std::min(lo + per, probes.size())));
                for (auto &f : parts)
                    f.get();
            }
            const int rank = rank_of_span(d, hs, field);

            switch (cfg.output)
            {
            case JobConfig::Output::json:
            {
                ordered_json j;
                ordered_json alpha = ordered_json::array();
                for (const auto &x : cfg.alpha)
                    alpha.push_back(x.to_string());
                j["config"] = {{"command", "spanning-set"},
                               {"q", cfg.q},
                               {"n", cfg.n},
                               {"alpha", alpha},
                               {"beta", cfg.beta.to_string()},
                               {"eta", eta_token(cfg.eta)},
                               {"k_max", cfg.k_max}};
                ordered_json labels = ordered_json::array();
                for (const auto &lab : s.labels)
                    labels.push_back(label_json(lab));
                ordered_json table = ordered_json::array();
                for (std::size_t i = 0; i < probes.size(); ++i)
                {
                    ordered_json probe = {{"m", probes[i].m},
                                          {"l", probes[i].l},
                                          {"u", square_class_token(probes[i].u)},
                                          {"k", probes[i].k}};
                    table.push_back({{"probe", probe},
                                     {"values", {cells[i][0], cells[i][1], cells[i][2], cells[i][3]}}});
                }
                j["results"] = {{"labels", labels}, {"table", table}, {"rank", rank}};
                j["provenance"] = {{"formula", "k-both"}};
                return j.dump(1) + "\n";
            }
            case JobConfig::Output::csv:
            {
                std::ostringstream os;
                os << "m,l,u,k,value1,value2,value3,value4\n";
                for (std::size_t i = 0; i < probes.size(); ++i)
                {
                    os << probes[i].m << "," << probes[i].l << ","
                       << square_class_token(probes[i].u) << ",";
                    for (std::size_t t = 0; t < probes[i].k.size(); ++t)
                        os << (t ? " " : "") << probes[i].k[t];
                    for (int f = 0; f < 4; ++f)
                        os << "," << cells[i][f];
                    os << "\n";
                }
                os << "# rank = " << rank << "\n";
                return os.str();
            }
            case JobConfig::Output::text:
            {
                std::ostringstream os;
                os << "spanning set, n = " << cfg.n << ", q = " << cfg.q
                   << ", eta = eta_" << eta_token(cfg.eta) << "\n";
                for (int f = 0; f < 4; ++f)
                {
                    os << "  function " << (f + 1) << ": alpha = (";
                    for (std::size_t i = 0; i < s.labels[f].alpha.size(); ++i)
                        os << (i ? "," : "") << s.labels[f].alpha[i].to_string();
                    os << "), beta = " << s.labels[f].beta.to_string() << ", branch = "
                       << branch_token(s.labels[f].branch) << "\n";
                }
                os << "rank of evaluation matrix: " << rank << "\n";
                return os.str();
            }
            }
            return {};
        }

        std::string classification_token(Classification c)
        {
            switch (c)
            {
            case Classification::Irreducible:
                return "Irreducible";
            case Classification::TwoGenericSummands:
                return "TwoGenericSummands";
            case Classification::Unknown:
                return "Unknown";
            }
            return "?";
        }

        std::string render_classify(const JobConfig &cfg)
        {
            const FieldConfig field(cfg.q);
            const UnramifiedData d(cfg.n, cfg.alpha, cfg.beta, cfg.branch, cfg.eta);
            const Classification cls = classify(d);
            const ROmega r = r_omega(d);
            const int r_order = (r == ROmega::order_two) ? 2 : 1;
            std::vector<std::string> eigen;
            if (cfg.n % 2 == 0 && r == ROmega::order_two)
            {
                const auto [plus, minus] = l_ratio_eigenvalues(cfg.n, field);
                eigen.push_back(specialize_even_powers(plus, cfg.q).to_string());
                eigen.push_back(specialize_even_powers(minus, cfg.q).to_string());
            }
            switch (cfg.output)
            {
            case JobConfig::Output::json:
            {
                ordered_json j;
                ordered_json alpha = ordered_json::array();
                for (const auto &x : cfg.alpha)
                    alpha.push_back(x.to_string());
                j["config"] = {{"command", "classify"},
                               {"q", cfg.q},
                               {"n", cfg.n},
                               {"alpha", alpha},
                               {"beta", cfg.beta.to_string()}};
                ordered_json res = {{"classification", classification_token(cls)},
                                    {"r_omega_order", r_order}};
                if (!eigen.empty())
                    res["eigenvalues"] = eigen;
                j["results"] = res;
                j["provenance"] = {{"formula", "k-both"}};
                return j.dump(1) + "\n";
            }
            case JobConfig::Output::csv:
            {
                std::ostringstream os;
                os << "classification,r_omega_order,eigenvalue_plus,eigenvalue_minus\n"
                   << classification_token(cls) << "," << r_order << ","
                   << (eigen.empty() ? "" : eigen[0]) << "," << (eigen.empty() ? "" : eigen[1])
                   << "\n";
                return os.str();
            }
            case JobConfig::Output::text:
            {
                std::ostringstream os;
                os << "classification: " << classification_token(cls) << "\n"
                   << "|R(omega)| = " << r_order << "\n";
                if (!eigen.empty())
                    os << "intertwining eigenvalues: " << eigen[0] << ", " << eigen[1] << "\n";
                return os.str();
            }
            }
            return {};
        }

        std::string render_selfcheck(const JobConfig &cfg, bool *invariants_ok)
        {
            const SelfCheckReport report = run_selfcheck(cfg.selfcheck_n_max, cfg.selfcheck_q);
            if (invariants_ok != nullptr)
                *invariants_ok = report.all_pass();
            if (cfg.output == JobConfig::Output::json)
            {
                ordered_json j;
                j["config"] = {{"command", "selfcheck"},
                               {"n_max", cfg.selfcheck_n_max},
                               {"q", cfg.selfcheck_q}};
                ordered_json checks = ordered_json::array();
                for (const auto &c : report.checks)
                    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
                j["results"] = {{"checks", checks}, {"all_pass", report.all_pass()}};
                j["provenance"] = {{"formula", "invariants"}};
                return j.dump(1) + "\n";
            }
            return format_text(report);
        }

    } // namespace

    std::string run_job(const JobConfig &cfg, bool *invariants_ok)
    {
        if (invariants_ok != nullptr)
            *invariants_ok = true;
        validate(cfg);
        switch (cfg.command)
        {
        case JobConfig::Command::hilbert:
            return render_hilbert(cfg);
        case JobConfig::Command::whittaker_table:
            return render_whittaker_table(cfg);
        case JobConfig::Command::spanning_set:
            return render_spanning_set(cfg);
        case JobConfig::Command::classify:
            return render_classify(cfg);
        case JobConfig::Command::selfcheck:
            return render_selfcheck(cfg, invariants_ok);
        }
        throw JobError("bad-command", "unknown command");
    }

} // namespace mwhit
