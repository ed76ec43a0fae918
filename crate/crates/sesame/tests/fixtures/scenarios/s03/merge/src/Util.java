import java.util.ArrayList;
import java.util.List;

public class Util {

    public static <T> List<T> copyList(List<T> source) {
        return new ArrayList<>(source);
    }

    private static final String EMPTY = "";

    public static <T> List<T> createListFromArray(T[] array) {
        return new ArrayList<>(java.util.Arrays.asList(array));
    }

    public static <T> void addElementToList(List<T> list, T element) {
        list.add(element);
    }

    public static String toString(List<String> list) {
        if (list == null || list.isEmpty()) { return EMPTY; }
        StringBuilder builder = new StringBuilder();
        for (String s : list) {
            builder.append(s);
        }
        return builder.toString();
    }
}
