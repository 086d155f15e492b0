#include "gf/gridfn_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace gf {

namespace {

std::string layer_name(std::size_t k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "layer_%04zu.f64", k);
    return buf;
}

}  // namespace

void save_gridfn(const GridFn& u, const std::filesystem::path& dir,
                 const std::map<std::string, std::string>& provenance) {
    std::filesystem::create_directories(dir);

    nlohmann::ordered_json meta;
    meta["format"] = "gf-gridfn";
    meta["version"] = 1;
    meta["byte_order"] = "little";
    meta["dim"] = u.grid().dim();
    nlohmann::ordered_json axes = nlohmann::ordered_json::array();
    for (int d = 0; d < u.grid().dim(); ++d) {
        const GridAxis& ax = u.grid().axis(d);
        axes.push_back({{"lo", ax.lo}, {"hi", ax.hi}, {"n", ax.n}});
    }
    meta["axes"] = std::move(axes);
    meta["eps"] = u.eps().values();
    nlohmann::ordered_json layers = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < u.eps().size(); ++k) layers.push_back(layer_name(k));
    meta["layers"] = std::move(layers);
    meta["provenance"] = provenance;

    {
        std::ofstream os(dir / "metadata.json", std::ios::trunc);
        if (!os) throw std::runtime_error("save_gridfn: cannot write metadata.json");
        os << meta.dump(2) << '\n';
    }
    for (std::size_t k = 0; k < u.eps().size(); ++k) {
        std::ofstream os(dir / layer_name(k), std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("save_gridfn: cannot write " + layer_name(k));
        const auto& layer = u.samples(k);
        os.write(reinterpret_cast<const char*>(layer.data()),
                 static_cast<std::streamsize>(layer.size() * sizeof(layer[0])));
        if (!os) throw std::runtime_error("save_gridfn: short write on " + layer_name(k));
    }
}

GridFn load_gridfn(const std::filesystem::path& dir,
                   std::map<std::string, std::string>* provenance) {
    std::ifstream is(dir / "metadata.json");
    if (!is) throw std::runtime_error("load_gridfn: missing metadata.json in " + dir.string());
    nlohmann::json meta;
    try {
        is >> meta;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("load_gridfn: malformed metadata.json: ") +
                                 e.what());
    }
    if (meta.value("format", "") != "gf-gridfn")
        throw std::runtime_error("load_gridfn: not a gf-gridfn directory");

    const int dim = meta.at("dim").get<int>();
    const auto& axes = meta.at("axes");
    if (!axes.is_array() || static_cast<int>(axes.size()) != dim)
        throw std::runtime_error("load_gridfn: axis list does not match dim");
    auto read_axis = [](const nlohmann::json& j) {
        return GridAxis{j.at("lo").get<double>(), j.at("hi").get<double>(),
                        j.at("n").get<std::size_t>()};
    };
    SpatialGrid grid = dim == 1 ? SpatialGrid(read_axis(axes[0]))
                                : SpatialGrid(read_axis(axes[0]), read_axis(axes[1]));

    EpsGrid eps(meta.at("eps").get<std::vector<double>>());
    const auto& layers = meta.at("layers");
    if (!layers.is_array() || layers.size() != eps.size())
        throw std::runtime_error("load_gridfn: layer list does not match eps grid");

    std::vector<std::vector<GridFn::value_type>> samples(eps.size());
    for (std::size_t k = 0; k < eps.size(); ++k) {
        const std::string name = layers[k].get<std::string>();
        std::ifstream ls(dir / name, std::ios::binary);
        if (!ls) throw std::runtime_error("load_gridfn: missing layer file " + name);
        std::vector<GridFn::value_type> layer(grid.node_count());
        ls.read(reinterpret_cast<char*>(layer.data()),
                static_cast<std::streamsize>(layer.size() * sizeof(layer[0])));
        if (ls.gcount() !=
            static_cast<std::streamsize>(layer.size() * sizeof(layer[0])))
            throw std::runtime_error("load_gridfn: short read on layer file " + name);
        samples[k] = std::move(layer);
    }

    if (provenance) {
        provenance->clear();
        if (meta.contains("provenance"))
            for (const auto& [key, val] : meta.at("provenance").items())
                (*provenance)[key] = val.get<std::string>();
    }
    return GridFn(grid, eps, std::move(samples));
}

}  // namespace gf
