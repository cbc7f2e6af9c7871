// Copyright (c) the mollab contributors.
// SPDX-License-Identifier: Apache-2.0

#include "mollab/field_io.hpp"

#include <bit>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "mollab/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "field binaries are little-endian; byte swapping is not implemented");

namespace mollab {

using nlohmann::json;

void save_field(const Field& field, const std::string& base, double time) {
    json meta;
    meta["format"] = "mollab-field";
    meta["version"] = 1;
    meta["domain"] = {{"id", field.domain()->id()}};
    if (field.domain()->kind() == Domain::Kind::Torus)
        meta["domain"]["periods"] = field.domain()->periods();
    meta["shape"] = field.shape();
    meta["components"] = field.components();
    meta["time"] = time;
    meta["positive"] = field.positive_flag();
    if (field.has_mask()) {
        // Run-length encoding: alternating counts starting with the number
        // of leading zeros.
        std::vector<std::size_t> rle;
        std::uint8_t current = 0;
        std::size_t run = 0;
        for (std::uint8_t v : field.validity()) {
            if ((v != 0) == (current != 0)) {
                ++run;
            } else {
                rle.push_back(run);
                current = v;
                run = 1;
            }
        }
        rle.push_back(run);
        meta["validity_rle"] = rle;
    }

    std::ofstream js(base + ".json");
    if (!js) throw IoError("cannot write " + base + ".json");
    js << meta.dump(2) << "\n";

    std::ofstream bin(base + ".f64", std::ios::binary);
    if (!bin) throw IoError("cannot write " + base + ".f64");
    bin.write(reinterpret_cast<const char*>(field.data()),
              std::streamsize(sizeof(double) * field.num_points() *
                              std::size_t(field.components())));
}

Field load_field(const std::string& base, double* time) {
    std::ifstream js(base + ".json");
    if (!js) throw IoError("cannot read " + base + ".json");
    json meta = json::parse(js);
    if (meta.value("format", "") != "mollab-field")
        throw IoError(base + ".json is not a field header");

    DomainPtr domain = Domain::from_id(meta["domain"]["id"].get<std::string>());
    std::vector<int> shape = meta["shape"].get<std::vector<int>>();
    int components = meta["components"].get<int>();
    Field f(domain, shape, components);
    if (time) *time = meta.value("time", 0.0);

    std::ifstream bin(base + ".f64", std::ios::binary);
    if (!bin) throw IoError("cannot read " + base + ".f64");
    std::size_t count = f.num_points() * std::size_t(components);
    bin.read(reinterpret_cast<char*>(f.data()),
             std::streamsize(sizeof(double) * count));
    if (std::size_t(bin.gcount()) != sizeof(double) * count)
        throw IoError(base + ".f64 is truncated");

    f.set_positive_flag(meta.value("positive", false));
    if (meta.contains("validity_rle")) {
        auto rle = meta["validity_rle"].get<std::vector<std::size_t>>();
        std::vector<std::uint8_t> mask;
        mask.reserve(f.num_points());
        std::uint8_t current = 0;
        for (std::size_t run : rle) {
            mask.insert(mask.end(), run, current);
            current = current ? 0 : 1;
        }
        f.set_validity(std::move(mask));
    }
    return f;
}

void export_csv(const Field& field, std::ostream& os) {
    const int d = int(field.shape().size());
    if (d > 2) throw ParameterError("CSV export supports 1D and 2D lattices");
    os << (d == 1 ? "x" : "x,y");
    for (int c = 0; c < field.components(); ++c) os << ",c" << c;
    os << "\n";
    for (std::size_t i = 0; i < field.num_points(); ++i) {
        auto x = field.point(i);
        os << x[0];
        if (d == 2) os << "," << x[1];
        for (int c = 0; c < field.components(); ++c) os << "," << field.at(c, i);
        os << "\n";
    }
}

}  // namespace mollab
