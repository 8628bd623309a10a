#include "plap/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace plap {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_number(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (trim(text.substr(used)).empty()) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("config key '" + key + "': expected a number, got '" +
                                text + "'");
}

int parse_int(const std::string& key, const std::string& text) {
    const double v = parse_number(key, text);
    const int i = static_cast<int>(v);
    if (i != v)
        throw std::invalid_argument("config key '" + key + "': expected an integer");
    return i;
}

std::map<std::string, std::string> parse_kv_block(const std::string& body,
                                                  const std::string& context) {
    std::map<std::string, std::string> out;
    std::istringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(context + ": expected key = value, got '" +
                                        item + "'");
        out[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
    }
    return out;
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_number("list entry", item));
    }
    return out;
}

Domain parse_domain_spec(const std::string& spec) {
    std::string body = trim(spec);
    if (!body.empty() && body.front() == '{') {
        if (body.back() != '}')
            throw std::invalid_argument("domain spec: unbalanced braces in '" + spec + "'");
        body = body.substr(1, body.size() - 2);
    }
    auto kv = parse_kv_block(body, "domain spec");
    const auto it = kv.find("kind");
    if (it == kv.end()) throw std::invalid_argument("domain spec: missing 'kind'");
    const std::string kind = it->second;
    kv.erase(it);

    auto take = [&](const char* key) {
        const auto k = kv.find(key);
        if (k == kv.end())
            throw std::invalid_argument("domain spec: " + kind + " needs '" + key + "'");
        const double v = parse_number(key, k->second);
        kv.erase(k);
        return v;
    };
    Domain dom = [&] {
        if (kind == "interval") {
            const double a = take("a"), b = take("b");
            return Domain::interval(a, b);
        }
        if (kind == "ball") {
            const int n = static_cast<int>(take("n"));
            return Domain::ball(n, take("R"));
        }
        if (kind == "shell") {
            const int n = static_cast<int>(take("n"));
            const double r = take("r");
            return Domain::shell(n, r, take("R"));
        }
        if (kind == "rectangle") {
            const double w = take("w");
            return Domain::rectangle(w, take("h"));
        }
        throw std::invalid_argument("domain spec: unknown kind '" + kind + "'");
    }();
    if (!kv.empty())
        throw std::invalid_argument("domain spec: unknown key '" + kv.begin()->first +
                                    "'");
    return dom;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "domain") {
            // braces may contain '=': keep the whole right-hand side
            value = trim(line.substr(eq + 1));
        }
        out[key] = value;
    }
    return out;
}

void apply_config_entries(RunConfig& config,
                          const std::map<std::string, std::string>& entries) {
    static const std::set<std::string> known = {
        "domain",     "p",          "p_list",     "beta",       "beta_list",
        "resolution", "solver",     "tolerance",  "max_iters",  "steps",
        "output_dir", "field",      "field_file", "eps_list",   "n",
        "volume",     "inner_radius"};
    for (const auto& [key, value] : entries) {
        if (!known.count(key))
            throw std::invalid_argument("unknown config key '" + key + "'");
        if (key == "domain") config.domain = parse_domain_spec(value);
        else if (key == "p") config.p = parse_number(key, value);
        else if (key == "p_list") config.p_list = parse_number_list(value);
        else if (key == "beta") config.beta = parse_number(key, value);
        else if (key == "beta_list") config.beta_list = parse_number_list(value);
        else if (key == "resolution") config.resolution = parse_int(key, value);
        else if (key == "solver") config.solver = value;
        else if (key == "tolerance") config.tolerance = parse_number(key, value);
        else if (key == "max_iters") config.max_iters = parse_int(key, value);
        else if (key == "steps") config.steps = parse_int(key, value);
        else if (key == "output_dir") config.output_dir = value;
        else if (key == "field") config.field_source = value;
        else if (key == "field_file") config.field_file = value;
        else if (key == "eps_list") config.eps_list = parse_number_list(value);
        else if (key == "n") config.n = parse_int(key, value);
        else if (key == "volume") config.volume = parse_number(key, value);
        else if (key == "inner_radius") config.inner_radius = parse_number(key, value);
    }
}

void validate_config(const RunConfig& config) {
    const std::string& cmd = config.command;
    auto need = [&](bool ok, const std::string& what) {
        if (!ok)
            throw std::invalid_argument("command '" + cmd + "' needs " + what);
    };
    auto check_p = [&](double p) { need(p > 1, "p > 1"); };
    auto check_beta = [&](double b) { need(b > 0, "beta > 0"); };

    need(config.resolution >= 4, "resolution >= 4");
    if (config.solver != "radial" && config.solver != "variational" &&
        config.solver != "both")
        throw std::invalid_argument("solver must be radial, variational or both");

    if (cmd == "solve") {
        need(config.domain.has_value(), "a domain");
        need(config.p.has_value(), "p");
        check_p(*config.p);
        need(config.beta.has_value(), "beta");
        check_beta(*config.beta);
    } else if (cmd == "sweep") {
        need(config.domain.has_value(), "a domain");
        need(!config.p_list.empty(), "a non-empty p_list");
        for (std::size_t i = 0; i < config.p_list.size(); ++i) {
            check_p(config.p_list[i]);
            if (i > 0) need(config.p_list[i] > config.p_list[i - 1], "increasing p_list");
        }
        need(config.beta.has_value(), "beta");
        check_beta(*config.beta);
    } else if (cmd == "expand") {
        need(config.domain.has_value(), "a ball or shell domain");
        need(config.domain->kind() == DomainKind::Ball ||
                 config.domain->kind() == DomainKind::Shell,
             "a ball or shell domain");
        need(config.p.has_value(), "p");
        check_p(*config.p);
        need(!config.beta_list.empty(), "a non-empty beta_list");
        for (double b : config.beta_list) check_beta(b);
    } else if (cmd == "compare") {
        need(config.n.has_value() && *config.n >= 2, "n >= 2");
        need(config.volume.has_value() && *config.volume > 0, "volume > 0");
        need(config.inner_radius.has_value() && *config.inner_radius > 0,
             "inner_radius > 0");
        need(config.p.has_value(), "p");
        check_p(*config.p);
        need(config.beta.has_value(), "beta");
        check_beta(*config.beta);
    } else if (cmd == "check" || cmd == "bracket") {
        need(config.domain.has_value(), "a domain");
        need(config.beta.has_value(), "beta");
        check_beta(*config.beta);
        if (config.field_source == "file")
            need(!config.field_file.empty(), "field_file when field = file");
        else
            need(config.field_source == "exact", "field = exact or file");
        if (cmd == "bracket") {
            need(!config.eps_list.empty(), "a non-empty eps_list");
            for (double e : config.eps_list) need(e > 0, "positive eps values");
        }
    } else {
        throw std::invalid_argument("unknown command '" + cmd + "'");
    }
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    if (domain) {
        j["domain"]["kind"] = to_string(domain->kind());
        switch (domain->kind()) {
            case DomainKind::Interval:
                j["domain"]["a"] = domain->a();
                j["domain"]["b"] = domain->b();
                break;
            case DomainKind::Ball:
                j["domain"]["n"] = domain->dim();
                j["domain"]["R"] = domain->radius();
                break;
            case DomainKind::Shell:
                j["domain"]["n"] = domain->dim();
                j["domain"]["r"] = domain->inner_radius();
                j["domain"]["R"] = domain->outer_radius();
                break;
            case DomainKind::Rectangle:
                j["domain"]["w"] = domain->width();
                j["domain"]["h"] = domain->height();
                break;
        }
    }
    if (p) j["p"] = *p;
    if (!p_list.empty()) j["p_list"] = p_list;
    if (beta) j["beta"] = *beta;
    if (!beta_list.empty()) j["beta_list"] = beta_list;
    j["resolution"] = resolution;
    j["solver"] = solver;
    j["tolerance"] = tolerance;
    j["max_iters"] = max_iters;
    j["steps"] = steps;
    j["output_dir"] = output_dir;
    j["field"] = field_source;
    if (!field_file.empty()) j["field_file"] = field_file;
    j["eps_list"] = eps_list;
    if (n) j["n"] = *n;
    if (volume) j["volume"] = *volume;
    if (inner_radius) j["inner_radius"] = *inner_radius;
    return j;
}

}  // namespace plap
