package org.sample.web;

public class SensorService {
    private final Map<Long, Sensor> store = new HashMap<>();
    private long nextId = 1;

    public Sensor create(Sensor item) {
        long id = nextId++;
        store.put(id, item);
        return item;
    }

    public Optional<Sensor> find(long id) {
        return Optional.ofNullable(store.get(id));
    }

    public List<Sensor> findAll(Predicate<? super Sensor> filter) {
        return store.values().stream()
                .filter(filter)
                .collect(Collectors.toList());
    }

    static final class Stats {
        int reads;
        int writes;

        double ratio() {
            return writes == 0 ? 0 : (double) reads / writes;
        }
    }
}
