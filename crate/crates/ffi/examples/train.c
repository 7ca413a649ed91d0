/* Trains SPIRAL on a tiny separable stream through the C ABI.
 *
 *   cargo build -p spiral-ffi --release
 *   cc crates/ffi/examples/train.c -Icrates/ffi/include \
 *      target/release/libspiral_ffi.a -lpthread -ldl -lm -o train
 */
#include <stdio.h>
#include <stdlib.h>

#include "spiral.h"

#define CHECK(call)                                                         \
    do {                                                                    \
        SpiralStatus s_ = (call);                                           \
        if (s_ != SPIRAL_STATUS_OK) {                                       \
            fprintf(stderr, "%s failed (%d): %s\n", #call, s_, spiral_last_error()); \
            return 1;                                                       \
        }                                                                   \
    } while (0)

int main(void) {
    SpiralDataset *ds = NULL;
    CHECK(spiral_dataset_new(2, &ds));
    for (int i = 0; i < 40; i++) {
        int label = (i % 2 == 0) ? 1 : -1;
        double x[2] = {label * (1.0 + (i % 5) * 0.1), (i % 7) * 0.05 - 0.15};
        CHECK(spiral_dataset_push(ds, x, 2, label));
    }

    SpiralConfig cfg = spiral_config_default(SPIRAL_ALGORITHM_SPIRAL, 42);
    cfg.epochs = 3;
    SpiralModel *model = NULL;
    CHECK(spiral_train(&cfg, ds, &model));

    double acc = 0.0;
    CHECK(spiral_model_accuracy(model, ds, &acc));
    double w[2];
    CHECK(spiral_model_weights(model, w, 2));
    printf("accuracy=%.6f w=[%.6f, %.6f]\n", acc, w[0], w[1]);

    double bad[3] = {0, 0, 0};
    int label = 0;
    if (spiral_model_predict(model, bad, 3, &label) != SPIRAL_STATUS_DIMENSION_MISMATCH) {
        return 1;
    }

    char *json = NULL;
    CHECK(spiral_model_to_json(model, &json));
    SpiralModel *copy = NULL;
    CHECK(spiral_model_from_json(json, &copy));
    spiral_string_free(json);

    spiral_model_free(copy);
    spiral_model_free(model);
    spiral_dataset_free(ds);
    return acc == 1.0 ? 0 : 1;
}
