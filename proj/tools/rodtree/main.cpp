#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "rodtree/error.hpp"

using namespace rodtree::cli;

int main(int argc, char** argv) {
    CLI::App app{"rodtree - interpretable decision trees for re-offence risk, with class "
                 "balancing, iterative feature elimination and a calibrated synthetic "
                 "data generator"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may appear after the subcommand
    app.set_config("--config", "", "flat key=value file mirroring the global flags; "
                                   "command line values win");

    GlobalOptions global;
    app.add_option("--seed", global.seed, "master seed; repeat r of an experiment uses seed+r")
        ->capture_default_str();
    app.add_option("--out", global.out_dir, "output directory")->capture_default_str();
    app.add_flag("--paper-faithful", global.paper_faithful,
                 "balance the whole dataset before the train/test split (leaky evaluation "
                 "order; default is split first, then balance the training half)");
    app.add_option("--balance", global.balance, "class balancing method")
        ->check(CLI::IsMember({"under", "over"}));
    app.add_option("--train-frac", global.train_frac, "training fraction of the split")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)))
        ->capture_default_str();
    const auto mln_option =
        app.add_option("--max-leaf-nodes", global.max_leaf_nodes,
                       "leaf budgets, comma separated; 0 means unbounded")
            ->delimiter(',')
            ->capture_default_str();
    app.add_option("--features", global.features, "feature codes, comma separated")
        ->delimiter(',');
    app.add_option("--repeats", global.repeats, "seeds per experiment cell")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // synth
    SynthOptions synth;
    CLI::App* cmd_synth = app.add_subcommand(
        "synth", "generate a calibrated synthetic dataset in the canonical schema");
    cmd_synth->add_option("--n", synth.n, "number of records")->capture_default_str();
    cmd_synth->add_option("--prior", synth.prior,
                          "positive-class ratio; non-default priors are auto-calibrated")
        ->capture_default_str();
    cmd_synth->add_option("-o,--output", synth.output,
                          "output CSV path (default: <out>/synthetic.csv)");

    // train
    TrainOptions train;
    CLI::App* cmd_train =
        app.add_subcommand("train", "train one tree and save the model document");
    cmd_train->add_option("--input", train.input, "labeled CSV")->required();
    cmd_train->add_option("--model-out", train.model_out,
                          "model path (default: <out>/model.json)");
    cmd_train->add_option("--test-out", train.test_out, "write the held-out test split here");
    cmd_train->add_option("--min-samples-split", train.min_samples_split)
        ->capture_default_str();
    cmd_train->add_option("--min-samples-leaf", train.min_samples_leaf)
        ->capture_default_str();

    // eval
    EvalOptions eval;
    CLI::App* cmd_eval = app.add_subcommand("eval", "evaluate a saved model on a labeled CSV");
    cmd_eval->add_option("--model", eval.model, "model document")->required();
    cmd_eval->add_option("--input", eval.input, "labeled CSV")->required();
    cmd_eval->add_flag("--csv", eval.csv, "emit a CSV row instead of the text block");

    // export-dot
    ExportDotOptions export_dot;
    CLI::App* cmd_export =
        app.add_subcommand("export-dot", "write the Graphviz view of a saved model");
    cmd_export->add_option("--model", export_dot.model, "model document")->required();
    cmd_export->add_option("-o,--output", export_dot.output, "DOT path (default: stdout)");

    // ask
    AskOptions ask;
    CLI::App* cmd_ask = app.add_subcommand(
        "ask", "answer the questions on a model's decision path and get the prediction");
    cmd_ask->add_option("--model", ask.model, "model document")->required();
    cmd_ask->add_option("--answers", ask.answers,
                        "scripted answers, e.g. PP=1,PC=0 (interactive prompt otherwise)");

    // rfe
    RfeOptions rfe;
    CLI::App* cmd_rfe = app.add_subcommand(
        "rfe", "iterative feature elimination over every leaf budget and repeat");
    cmd_rfe->add_option("--input", rfe.input,
                        "labeled CSV (default: generate the synthetic dataset)");

    // sweep
    SweepOptions sweep;
    CLI::App* cmd_sweep = app.add_subcommand(
        "sweep", "full experiment grid with figure data, gnuplot scripts and rankings");
    cmd_sweep->add_option("--input", sweep.input,
                          "labeled CSV (default: generate the synthetic dataset)");
    cmd_sweep->add_option("--ledger", sweep.ledger,
                          "pivot an existing ledger.csv instead of running experiments");

    try {
        app.parse(argc, argv);
        global.max_leaf_nodes_given = mln_option->count() > 0;

        if (cmd_synth->parsed()) return run_synth(global, synth);
        if (cmd_train->parsed()) return run_train(global, train);
        if (cmd_eval->parsed()) return run_eval(global, eval);
        if (cmd_export->parsed()) return run_export_dot(global, export_dot);
        if (cmd_ask->parsed()) return run_ask(global, ask);
        if (cmd_rfe->parsed()) return run_rfe(global, rfe);
        if (cmd_sweep->parsed()) return run_sweep(global, sweep);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const rodtree::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
