#include "gwseries/correspond.hpp"

int main(int argc, char** argv) {
    return gwseries::cli_main(argc, argv);
}
