class Two {
    void one() {
        p();
        log();
    }

    void two() {
        log();
        q();
    }
}
