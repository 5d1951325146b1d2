#pragma once

#include <initializer_list>
#include <optional>
#include <string>

#include <json.hpp>

#include "goalg/cptp.hpp"
#include "goalg/fockrep.hpp"
#include "goalg/gaussian_states.hpp"
#include "goalg/wigner.hpp"

namespace goalg::io {

using json = nlohmann::json;

// A JSON value plus its location; every failure names the path, e.g.
// "$.terms[2].kind: unknown generator kind 'foo'".
class Node {
public:
    Node(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}

    const json& raw() const { return *j_; }
    const std::string& path() const { return path_; }
    [[noreturn]] void fail(const std::string& msg) const;

    void expect_object() const;
    void expect_array() const;
    // Throws on any key not in `allowed`.
    void allow_keys(std::initializer_list<const char*> allowed) const;
    bool has(const char* key) const;
    Node at(const char* key) const;
    std::optional<Node> opt(const char* key) const;
    Node at(size_t i) const;
    size_t size() const;

    double number() const;  // finite
    long long integer() const;
    bool boolean() const;
    std::string string() const;

private:
    const json* j_;
    std::string path_;
};

json parse_text(const std::string& text);

Mat read_matrix(const Node& n, long rows, long cols);
Vec read_vector(const Node& n, long size);

GoElement read_go_element(const Node& n);
GaussianState read_gaussian_state(const Node& n);
ChannelRep read_channel(const Node& n, int modes);
StateSpec read_state_spec(const Node& n);
// Missing keys keep the value from `defaults`.
Axis read_axis(const Node& n, const Axis& defaults = {});

json to_json(const Mat& m);
json to_json(const Vec& v);
json to_json(const GoElement& g);
json to_json(const GaussianState& s);
json to_json(const ChannelRep& e);
json to_json(const CptpReport& r);
json to_json(const VerifyReport& r);

// %.17g; every CSV number goes through this.
std::string fmt17(double v);

}  // namespace goalg::io
