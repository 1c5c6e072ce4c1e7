#include "ailearn/scenario.hpp"

#include "ailearn/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <fstream>
#include <map>
#include <set>

namespace ailearn {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>> kSchema = {
    {"tech", {"d", "p"}},
    {"cost", {"t0", "s", "gamma", "beta_p", "beta_d"}},
    {"policy", {"p_prime", "lambda"}},
    {"reduction", {"kind", "rho", "mk_scale", "mk_exponent"}},
    {"grid", {"n"}},
};

double parse_number(const std::string& field, const std::string& text) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw InputError(field + ": expected a number, got '" + text + "'");
    return value;
}

class Section {
public:
    Section(std::string name, const pt::ptree* tree) : name_(std::move(name)), tree_(tree) {}

    bool present() const { return tree_ != nullptr; }

    std::optional<std::string> text(const std::string& key) const {
        if (!tree_) return std::nullopt;
        if (auto v = tree_->get_child_optional(pt::ptree::path_type(key, '\0'))) return v->data();
        return std::nullopt;
    }

    double number(const std::string& key) const {
        auto v = text(key);
        if (!v) throw InputError(name_ + "." + key + ": missing");
        return parse_number(name_ + "." + key, *v);
    }

    std::optional<double> optional_number(const std::string& key) const {
        auto v = text(key);
        if (!v) return std::nullopt;
        return parse_number(name_ + "." + key, *v);
    }

    void forbid(const std::string& key, const std::string& why) const {
        if (text(key)) throw InputError(name_ + "." + key + ": " + why);
    }

private:
    std::string name_;
    const pt::ptree* tree_;
};

}  // namespace

Scenario parse_scenario(std::istream& in) {
    pt::ptree tree;
    try {
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw InputError(std::string("config: ") + e.what());
    }

    std::map<std::string, const pt::ptree*> sections;
    for (const auto& [name, child] : tree) {
        const auto schema = kSchema.find(name);
        if (schema == kSchema.end()) {
            if (child.empty()) throw InputError(name + ": key outside of any section");
            throw InputError(name + ": unknown section");
        }
        for (const auto& [key, value] : child) {
            if (!schema->second.contains(key)) throw InputError(name + "." + key + ": unknown key");
        }
        sections[name] = &child;
    }
    auto section = [&](const std::string& name) {
        auto it = sections.find(name);
        return Section(name, it == sections.end() ? nullptr : it->second);
    };

    Scenario s;
    const Section tech = section("tech");
    s.tech = {tech.number("d"), tech.number("p")};
    s.tech.validate();

    const Section cost = section("cost");
    s.cost = {cost.number("t0"), cost.number("s"), cost.number("gamma"), cost.number("beta_p"),
              cost.number("beta_d")};
    s.cost.validate();

    if (const Section policy = section("policy"); policy.present()) {
        Belief belief{policy.number("p_prime"), policy.optional_number("lambda").value_or(1.0)};
        belief.validate(s.tech);
        s.policy = belief;
    }

    if (const Section reduction = section("reduction"); reduction.present()) {
        const std::string kind = reduction.text("kind").value_or("");
        if (kind == "proportional") {
            reduction.forbid("mk_scale", "only valid for kind = cumulative");
            reduction.forbid("mk_exponent", "only valid for kind = cumulative");
            const double rho = reduction.number("rho");
            if (!(rho > 0.0 && rho < 1.0)) throw InputError("reduction.rho: must lie in (0,1)");
            s.reduction = ProportionalReduction{rho};
        } else if (kind == "cumulative") {
            reduction.forbid("rho", "only valid for kind = proportional");
            s.reduction = power_marginal_reduction(reduction.number("mk_scale"),
                                                   reduction.optional_number("mk_exponent").value_or(0.0));
        } else {
            throw InputError("reduction.kind: expected 'proportional' or 'cumulative', got '" + kind + "'");
        }
    }

    if (const Section grid = section("grid"); grid.present()) {
        const double n = grid.number("n");
        if (!(n >= 2.0) || n != static_cast<double>(static_cast<int>(n)))
            throw InputError("grid.n: must be an integer >= 2");
        s.grid_n = static_cast<int>(n);
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("config: cannot open '" + path + "'");
    return parse_scenario(in);
}

}  // namespace ailearn
