#include "bfmn/graph_io.hpp"

#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <json.hpp>

namespace bfmn {

using nlohmann::json;

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

EdgeClass edge_class_of(const Bfmn& bfmn, const BfmnEdge& e) {
    return classify_edge(bfmn.nodes.at(e.cue_stem).label,
                         bfmn.nodes.at(e.associate_stem).label);
}

}  // namespace

std::string to_graphml(const Bfmn& bfmn) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"d0\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
        << "  <key id=\"d1\" for=\"node\" attr.name=\"count\" attr.type=\"long\"/>\n"
        << "  <key id=\"d2\" for=\"node\" attr.name=\"display_form\" attr.type=\"string\"/>\n"
        << "  <key id=\"d3\" for=\"node\" attr.name=\"is_cue\" attr.type=\"boolean\"/>\n"
        << "  <key id=\"d4\" for=\"edge\" attr.name=\"multiplicity\" attr.type=\"long\"/>\n"
        << "  <key id=\"d5\" for=\"edge\" attr.name=\"idiosyncratic\" attr.type=\"boolean\"/>\n"
        << "  <key id=\"d6\" for=\"edge\" attr.name=\"class\" attr.type=\"string\"/>\n"
        << "  <graph id=\"bfmn\" edgedefault=\"undirected\">\n";
    for (const auto& [stem_text, node] : bfmn.nodes) {
        out << "    <node id=\"" << xml_escape(stem_text) << "\">\n"
            << "      <data key=\"d0\">" << to_string(node.label) << "</data>\n"
            << "      <data key=\"d1\">" << node.occurrence_count << "</data>\n"
            << "      <data key=\"d2\">" << xml_escape(node.display_form) << "</data>\n"
            << "      <data key=\"d3\">" << (node.is_cue ? "true" : "false") << "</data>\n"
            << "    </node>\n";
    }
    for (const auto& [key, edge] : bfmn.edges) {
        out << "    <edge source=\"" << xml_escape(edge.cue_stem) << "\" target=\""
            << xml_escape(edge.associate_stem) << "\">\n"
            << "      <data key=\"d4\">" << edge.multiplicity << "</data>\n"
            << "      <data key=\"d5\">" << (edge.idiosyncratic() ? "true" : "false")
            << "</data>\n"
            << "      <data key=\"d6\">" << to_string(edge_class_of(bfmn, edge)) << "</data>\n"
            << "    </edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
    return out.str();
}

Bfmn from_graphml(const std::string& xml) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in(xml);
    try {
        pt::read_xml(in, tree);
    } catch (const pt::xml_parser_error& ex) {
        throw FormatError(std::string("bad GraphML: ") + ex.what());
    }

    Bfmn bfmn;
    try {
        // key id -> attribute name mapping, as declared in the document;
        // "attr.name" contains a dot, so use '/'-separated paths throughout
        auto attr = [](const pt::ptree& element, const std::string& name) {
            return element.get<std::string>(
                pt::ptree::path_type("<xmlattr>/" + name, '/'));
        };
        std::map<std::string, std::string> keys;
        const pt::ptree& root = tree.get_child("graphml");
        for (const auto& [tag, child] : root) {
            if (tag != "key") continue;
            keys[attr(child, "id")] = attr(child, "attr.name");
        }
        auto data_of = [&keys, &attr](const pt::ptree& element) {
            std::map<std::string, std::string> out;
            for (const auto& [tag, child] : element) {
                if (tag != "data") continue;
                auto key_it = keys.find(attr(child, "key"));
                if (key_it != keys.end()) out[key_it->second] = child.get_value<std::string>();
            }
            return out;
        };

        const pt::ptree& graph = root.get_child("graph");
        for (const auto& [tag, child] : graph) {
            if (tag == "node") {
                BfmnNode node;
                node.stem = attr(child, "id");
                auto data = data_of(child);
                node.label = valence_label_from_string(data.at("label"));
                node.occurrence_count = std::stoull(data.at("count"));
                node.display_form = data.count("display_form") ? data.at("display_form")
                                                               : node.stem;
                node.is_cue = data.count("is_cue") && data.at("is_cue") == "true";
                bfmn.nodes[node.stem] = node;
            } else if (tag == "edge") {
                BfmnEdge edge;
                edge.cue_stem = attr(child, "source");
                edge.associate_stem = attr(child, "target");
                auto data = data_of(child);
                edge.multiplicity = std::stoull(data.at("multiplicity"));
                bfmn.edges[{edge.cue_stem, edge.associate_stem}] = edge;
            }
        }
    } catch (const pt::ptree_error& ex) {
        throw FormatError(std::string("bad GraphML structure: ") + ex.what());
    } catch (const std::out_of_range&) {
        throw FormatError("GraphML is missing required node/edge attributes");
    }
    return bfmn;
}

std::string to_dot(const Bfmn& bfmn) {
    std::ostringstream out;
    out << "graph bfmn {\n";
    for (const auto& [stem_text, node] : bfmn.nodes) {
        const char* color = node.label == ValenceLabel::Positive  ? "cyan"
                            : node.label == ValenceLabel::Negative ? "red"
                                                                   : "black";
        out << "  \"" << dot_escape(stem_text) << "\" [label=\""
            << dot_escape(node.display_form) << "\", fontcolor=\"" << color
            << "\", valence=\"" << to_string(node.label) << "\", count=\""
            << node.occurrence_count << "\", is_cue=\"" << (node.is_cue ? "true" : "false")
            << "\"];\n";
    }
    for (const auto& [key, edge] : bfmn.edges) {
        EdgeClass cls = edge_class_of(bfmn, edge);
        const char* color = cls == EdgeClass::NegativeNegative   ? "red"
                            : cls == EdgeClass::PositivePositive ? "cyan"
                            : cls == EdgeClass::Conflicting      ? "purple"
                                                                 : "gray";
        out << "  \"" << dot_escape(edge.cue_stem) << "\" -- \""
            << dot_escape(edge.associate_stem) << "\" [color=\"" << color
            << "\", multiplicity=\"" << edge.multiplicity << "\", idiosyncratic=\""
            << (edge.idiosyncratic() ? "true" : "false") << "\", class=\""
            << to_string(cls) << "\", penwidth=" << (edge.multiplicity > 1 ? "2.5" : "1.0")
            << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string to_graph_json(const Bfmn& bfmn) {
    json j;
    json nodes = json::array();
    for (const auto& [stem_text, node] : bfmn.nodes)
        nodes.push_back({{"stem", node.stem},
                         {"display_form", node.display_form},
                         {"label", to_string(node.label)},
                         {"count", node.occurrence_count},
                         {"is_cue", node.is_cue}});
    json edges = json::array();
    for (const auto& [key, edge] : bfmn.edges)
        edges.push_back({{"source", edge.cue_stem},
                         {"target", edge.associate_stem},
                         {"multiplicity", edge.multiplicity},
                         {"idiosyncratic", edge.idiosyncratic()},
                         {"class", to_string(edge_class_of(bfmn, edge))}});
    j["nodes"] = nodes;
    j["edges"] = edges;
    return j.dump(2) + "\n";
}

}  // namespace bfmn
