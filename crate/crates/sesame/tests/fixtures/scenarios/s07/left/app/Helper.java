class Helper {
    void help() {
        h();
    }
}
